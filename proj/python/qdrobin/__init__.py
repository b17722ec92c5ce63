"""Planar spectral toolkit: dbar-Robin eigencurves, quantum-dot Dirac
eigenvalues, and geometric bounds."""

from qdrobin._core import (  # noqa: F401
    CurveSample,
    DiskConstants,
    DomainSpec,
    EigenResult,
    GeometricSummary,
    Mesh,
    RecipeResult,
    SpectralCurve,
    SteklovResult,
    a_of_theta,
    antunes_p,
    b_function,
    benguria_lower,
    build_mesh,
    classify_bound,
    dbar_robin_mu,
    dirichlet_lambda,
    disk_constants,
    domain_config_json,
    fk_all_condition,
    fk_some_params,
    geometric_summary,
    lambda_bounds,
    lambda_dirichlet_unit_disk,
    lambda_disk,
    load_domain_config,
    mu_bounds,
    mu_curve,
    mu_curve_disk,
    mu_disk,
    parse_domain_config,
    p_parabola,
    raulot_q_lower,
    robin_mu,
    solve_lambda,
    steklov_q,
    t_forward,
    t_inverse,
    theta_of_a,
    vartheta,
    vartheta_inv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
