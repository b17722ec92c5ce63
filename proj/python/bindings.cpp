#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdrobin/bounds.hpp"
#include "qdrobin/disk.hpp"
#include "qdrobin/fem.hpp"
#include "qdrobin/geometry.hpp"
#include "qdrobin/link.hpp"
#include "qdrobin/mesh.hpp"

namespace py = pybind11;
using namespace qdrobin;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar spectral toolkit: dbar-Robin eigencurves, quantum-dot Dirac "
            "eigenvalues, and geometric bounds";

  py::class_<DomainSpec>(m, "DomainSpec")
      .def_static("disk", &DomainSpec::disk, py::arg("radius"))
      .def_static("ellipse", &DomainSpec::ellipse, py::arg("semi_axis_a"),
                  py::arg("semi_axis_b"))
      .def_static("polar_star", &DomainSpec::polar_star, py::arg("r0"),
                  py::arg("cos_coeffs") = std::vector<double>{},
                  py::arg("sin_coeffs") = std::vector<double>{})
      .def("id", &DomainSpec::id)
      .def("scaled", [](const DomainSpec& d, double t) { return scaled(d, t); },
           py::arg("t"))
      .def("__repr__", [](const DomainSpec& d) { return "<DomainSpec " + d.id() + ">"; });

  m.def("parse_domain_config", &parse_domain_config, py::arg("json_text"));
  m.def("load_domain_config", &load_domain_config, py::arg("path"));
  m.def("domain_config_json", &domain_config_json, py::arg("domain"));

  py::class_<GeometricSummary>(m, "GeometricSummary")
      .def_readonly("area", &GeometricSummary::area)
      .def_readonly("perimeter", &GeometricSummary::perimeter)
      .def_readonly("inradius", &GeometricSummary::inradius)
      .def_readonly("kappa_min", &GeometricSummary::kappa_min)
      .def_readonly("inradius_tol", &GeometricSummary::inradius_tol);
  m.def("geometric_summary", &geometric_summary, py::arg("domain"));

  m.def("vartheta", &vartheta, py::arg("theta"));
  m.def("vartheta_inv", &vartheta_inv, py::arg("x"));
  m.def("p_parabola",
        [](double theta, double mass, double a) {
          return p_parabola(LinkParams(theta, mass), a);
        },
        py::arg("theta"), py::arg("m"), py::arg("a"));
  m.def("t_forward",
        [](double theta, double mass, double lambda) {
          return t_forward(LinkParams(theta, mass), lambda);
        },
        py::arg("theta"), py::arg("m"), py::arg("lambda_"));
  m.def("t_inverse", &t_inverse, py::arg("m"), py::arg("a"), py::arg("mu"));

  py::class_<DiskConstants>(m, "DiskConstants")
      .def_readonly("radius", &DiskConstants::radius)
      .def_readonly("lambda_dirichlet", &DiskConstants::lambda_dirichlet)
      .def_readonly("q", &DiskConstants::q)
      .def_readonly("area", &DiskConstants::area)
      .def_readonly("perimeter", &DiskConstants::perimeter);
  m.def("disk_constants", &disk_constants, py::arg("radius") = 1.0);
  m.def("mu_disk", &mu_disk, py::arg("a"), py::arg("radius") = 1.0, py::arg("k_max") = 8);

  py::class_<RecipeResult>(m, "RecipeResult")
      .def_readonly("a_star", &RecipeResult::a_star)
      .def_readonly("lambda_", &RecipeResult::lambda)
      .def_readonly("residual", &RecipeResult::residual)
      .def_readonly("evaluations", &RecipeResult::evaluations)
      .def("__repr__", [](const RecipeResult& r) {
        std::ostringstream os;
        os << "<RecipeResult lambda=" << r.lambda << " a_star=" << r.a_star << ">";
        return os.str();
      });
  m.def("lambda_disk", &lambda_disk, py::arg("theta"), py::arg("m"),
        py::arg("radius") = 1.0, py::arg("tol") = 1e-12);
  m.def("solve_lambda",
        [](const MuEvaluator& mu_eval, double theta, double mass,
           std::optional<double> dirichlet_hint, double tol) {
          return solve_lambda(mu_eval, LinkParams(theta, mass), dirichlet_hint, tol);
        },
        py::arg("mu_eval"), py::arg("theta"), py::arg("m"),
        py::arg("dirichlet_hint") = std::nullopt, py::arg("tol") = 1e-11);
  m.def("classify_bound",
        [](const MuEvaluator& mu_eval, double mass, double bound, double theta,
           double tol_band) {
          const BoundClassification c = classify_bound(mu_eval, mass, bound, theta, tol_band);
          const char* verdict = c.verdict == BoundClass::equal_within_tol ? "equal"
                                : c.verdict == BoundClass::strict_lower   ? "strict_lower"
                                                                          : "strict_upper";
          return py::make_tuple(verdict, c.theta, c.a, c.margin);
        },
        py::arg("mu_eval"), py::arg("m"), py::arg("bound"), py::arg("theta"),
        py::arg("tol_band") = 1e-9);
  m.def("a_of_theta", &a_of_theta, py::arg("lambda0_eval"), py::arg("theta"), py::arg("m"));
  m.def("theta_of_a", &theta_of_a, py::arg("mu0_eval"), py::arg("a"), py::arg("m"));
  m.def("antunes_p", &antunes_p, py::arg("mu_eval"), py::arg("a"));

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("node_count", &Mesh::node_count)
      .def_property_readonly("triangle_count",
                             [](const Mesh& mesh) { return mesh.triangles.size(); })
      .def_readonly("level", &Mesh::level)
      .def("total_area", &Mesh::total_area)
      .def("dump", [](const Mesh& mesh) {
        std::ostringstream os;
        dump_mesh(mesh, os);
        return os.str();
      });
  m.def("build_mesh", &build_mesh, py::arg("domain"), py::arg("level"));

  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("value", &EigenResult::value)
      .def_readonly("residual", &EigenResult::residual)
      .def_readonly("dofs", &EigenResult::dofs)
      .def_readonly("iterations", &EigenResult::iterations);
  m.def("dirichlet_lambda",
        [](const DomainSpec& d, int level) { return dirichlet_lambda(build_mesh(d, level)); },
        py::arg("domain"), py::arg("level") = 5);
  m.def("dbar_robin_mu",
        [](const DomainSpec& d, double a, int level) {
          return dbar_robin_mu(build_mesh(d, level), a);
        },
        py::arg("domain"), py::arg("a"), py::arg("level") = 5);
  m.def("robin_mu",
        [](const DomainSpec& d, double a, int level) {
          return robin_mu(build_mesh(d, level), a);
        },
        py::arg("domain"), py::arg("a"), py::arg("level") = 5);

  py::class_<CurveSample>(m, "CurveSample")
      .def_readonly("a", &CurveSample::a)
      .def_readonly("mu", &CurveSample::mu)
      .def_readonly("residual", &CurveSample::residual);
  py::class_<SpectralCurve>(m, "SpectralCurve")
      .def_readonly("domain_id", &SpectralCurve::domain_id)
      .def_readonly("samples", &SpectralCurve::samples)
      .def_readonly("slope_origin", &SpectralCurve::slope_origin)
      .def_readonly("monotone", &SpectralCurve::monotone)
      .def_readonly("concave", &SpectralCurve::concave)
      .def("evaluator", [](const SpectralCurve& c) { return curve_evaluator(c); });
  m.def("mu_curve", &mu_curve, py::arg("domain"), py::arg("a_grid"), py::arg("level") = 5);
  m.def("mu_curve_disk", &mu_curve_disk, py::arg("radius"), py::arg("a_grid"),
        py::arg("k_max") = 8);

  py::class_<SteklovResult>(m, "SteklovResult")
      .def_readonly("q", &SteklovResult::q)
      .def_readonly("degree", &SteklovResult::degree)
      .def_readonly("effective_degree", &SteklovResult::effective_degree)
      .def_readonly("gram_condition", &SteklovResult::gram_condition);
  m.def("steklov_q", &steklov_q, py::arg("domain"), py::arg("degree") = 20);

  m.def("mu_bounds",
        [](double lambda_dirichlet, double q, double perimeter, double a) {
          const MuBounds b = mu_bounds(lambda_dirichlet, q, perimeter, a);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("lambda_dirichlet"), py::arg("q"), py::arg("perimeter"), py::arg("a"));
  m.def("b_function", &b_function, py::arg("lambda_dirichlet"), py::arg("vartheta"),
        py::arg("m"), py::arg("xi"));
  m.def("lambda_bounds",
        [](double lambda_dirichlet, double q, double perimeter, double theta, double mass) {
          const LambdaBounds b = lambda_bounds(lambda_dirichlet, q, perimeter, theta, mass);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("lambda_dirichlet"), py::arg("q"), py::arg("perimeter"), py::arg("theta"),
        py::arg("m"));
  m.def("benguria_lower", &benguria_lower, py::arg("area"), py::arg("theta"),
        py::arg("m") = 0.0);
  m.def("raulot_q_lower",
        [](double inradius, double kappa_min) {
          const RaulotBound r = raulot_q_lower(inradius, kappa_min);
          return py::make_tuple(r.applicable, r.value);
        },
        py::arg("inradius"), py::arg("kappa_min"));
  m.def("fk_all_condition", &fk_all_condition, py::arg("area"), py::arg("q"));
  m.def("fk_some_params",
        [](double lambda_dirichlet, double q, double area, double mass) {
          const FkSomeParams p = fk_some_params(lambda_dirichlet, q, area, mass,
                                                [](double a) { return mu_disk(a); });
          return py::make_tuple(p.a_threshold, p.theta_threshold);
        },
        py::arg("lambda_dirichlet"), py::arg("q"), py::arg("area"), py::arg("m") = 0.0);
  m.def("lambda_dirichlet_unit_disk", &lambda_dirichlet_unit_disk);
}
