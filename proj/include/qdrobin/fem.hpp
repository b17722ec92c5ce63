#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "qdrobin/link.hpp"
#include "qdrobin/mesh.hpp"

// P1 Galerkin eigensolvers for general domains: the Dirichlet Laplacian, the
// dbar-Robin form 4 int |dzbar u|^2 + a int_bdry |u|^2 over complex-valued
// elements, the classical Robin form, and sampled eigencurves. All discrete
// eigenvalues are upper bounds of their continuum counterparts (conforming
// spaces); downstream tolerances are one-sided aware.

namespace qdrobin {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;
using SparseD = Eigen::SparseMatrix<double>;

struct EigenResult {
  double value = 0.0;
  Eigen::VectorXcd vector;   // coefficient vector on the solve's DOF set
  double residual = 0.0;     // ||A v - mu B v|| / ||B v||
  int dofs = 0;
  int iterations = 0;
};

/// Smallest Dirichlet eigenvalue: stiffness/mass pencil with boundary DOFs
/// eliminated, shifted inverse iteration on a sparse factorization until
/// ||Av - mu Mv||/||Mv|| <= 1e-10 max(1, mu), or until the residual pins at
/// the discretization's rounding floor with the eigenvalue stationary.
EigenResult dirichlet_lambda(const Mesh& mesh);

/// Cached assembly for the dbar-Robin eigencurve of one mesh. The bulk
/// matrix 4 int dzbar u conj(dzbar v) is Hermitian but not real; only the
/// boundary-mass block rescales with a, so a-sweeps reuse everything else.
class DbarRobinForm {
 public:
  explicit DbarRobinForm(const Mesh& mesh);

  EigenResult solve(double a, double tol = 1e-10, int max_iterations = 500) const;

  const SparseC& bulk() const { return bulk_; }
  const SparseC& boundary_mass() const { return boundary_mass_; }
  const SparseC& mass() const { return mass_; }

 private:
  SparseC bulk_, boundary_mass_, mass_;
};

EigenResult dbar_robin_mu(const Mesh& mesh, double a);

/// Classical Robin form int |grad u|^2 + a int_bdry |u|^2 (real elements).
class RobinForm {
 public:
  explicit RobinForm(const Mesh& mesh);
  EigenResult solve(double a, double tol = 1e-10, int max_iterations = 500) const;

 private:
  SparseD stiffness_, boundary_mass_, mass_;
};

EigenResult robin_mu(const Mesh& mesh, double a);

struct CurveSample {
  double a = 0.0;
  double mu = 0.0;
  double residual = 0.0;
};

struct SpectralCurve {
  std::string domain_id;
  std::vector<CurveSample> samples;
  double slope_origin = 0.0;  // mu(a_min)/a_min
  bool monotone = false;
  bool concave = false;
};

/// FEM eigencurve on a strictly increasing positive grid, one mesh and one
/// assembly shared across all grid points.
SpectralCurve mu_curve(const DomainSpec& domain, const std::vector<double>& a_grid,
                       int level);

/// Analytic disk eigencurve on the same sample layout.
SpectralCurve mu_curve_disk(double radius, const std::vector<double>& a_grid,
                            int k_max = 8);

/// Monotone piecewise-linear interpolant of a sampled curve, usable as a
/// MuEvaluator. Approximate: linear through the origin below the grid,
/// last-chord continuation above it.
MuEvaluator curve_evaluator(SpectralCurve curve);

struct SteklovResult {
  double q = 0.0;
  int degree = 0;            // requested harmonic basis degree
  int effective_degree = 0;  // after condition-number truncation
  double gram_condition = 0.0;
};

/// q = inf over harmonic h of (bdry integral |h|^2)/(bulk integral |h|^2) by
/// Galerkin minimization over harmonic polynomials {1, Re z^k, Im z^k}
/// centered at the centroid. Bulk Gram entries are exact boundary moment
/// integrals; the basis is truncated if the Gram condition exceeds 1e12.
SteklovResult steklov_q(const DomainSpec& domain, int degree = 20);

}  // namespace qdrobin
