#pragma once

#include <array>
#include <string>
#include <vector>

// Bounded C^2 planar domains given by explicit boundary parametrizations
// (disk, ellipse, polar Fourier star) and the geometric quantities consumed
// by the bound formulas: area, perimeter, inradius, minimum curvature.
// Arbitrary curve input is rejected rather than approximated.

namespace qdrobin {

enum class DomainKind { disk, ellipse, polar_star };

struct DomainSpec {
  DomainKind kind = DomainKind::disk;

  double radius = 1.0;  // disk

  double semi_axis_a = 1.0;  // ellipse, A >= B > 0
  double semi_axis_b = 1.0;

  double r0 = 1.0;  // polar star: r(phi) = r0 + sum_k (c_k cos k phi + s_k sin k phi)
  std::vector<double> cos_coeffs;  // c_1..c_K
  std::vector<double> sin_coeffs;  // s_1..s_K

  static DomainSpec disk(double R);
  static DomainSpec ellipse(double A, double B);
  static DomainSpec polar_star(double r0, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs);

  std::string id() const;
};

/// Throws std::invalid_argument if the spec violates its invariants
/// (non-positive radius/axes, A < B, or a polar star whose r(phi) is not
/// strictly positive on a dense grid).
void validate(const DomainSpec& domain);

/// The domain scaled by t about the origin.
DomainSpec scaled(const DomainSpec& domain, double t);

/// Boundary point with analytic first and second parameter derivatives.
struct CurvePoint {
  double x, y;    // gamma(t)
  double dx, dy;  // gamma'(t)
  double ddx, ddy;
};

/// Evaluate the (counterclockwise) boundary parametrization at t in [0, 2pi).
CurvePoint eval_curve(const DomainSpec& domain, double t);

/// Signed curvature at parameter t (positive for convex arcs, may be
/// negative on nonconvex stars).
double curvature(const DomainSpec& domain, double t);

struct BoundarySample {
  double param;                    // parameter t
  std::array<double, 2> point;
  std::array<double, 2> tangent;   // unit, positively oriented
  std::array<double, 2> normal;    // unit, outward
  double curvature;
  double weight;                   // arclength weight
};

struct BoundaryQuadrature {
  std::vector<BoundarySample> samples;
  double total_length() const;
};

/// Periodic trapezoidal samples of the parametrization, n >= 16.
/// Spectrally accurate for these smooth closed curves. Throws if the
/// parametrization degenerates (|gamma'| ~ 0 at a sample).
BoundaryQuadrature boundary_quadrature(const DomainSpec& domain, int n);

struct GeometricSummary {
  double area = 0.0;
  double perimeter = 0.0;
  double inradius = 0.0;
  double kappa_min = 0.0;
  double inradius_tol = 0.0;  // achieved tolerance of the inradius search
};

/// Area via Green's theorem, perimeter by arclength, kappa_min by sampled
/// minimum plus local refinement, inradius by seeded maximin with
/// Nelder-Mead refinement (tolerance 1e-8 * sqrt(area)).
GeometricSummary geometric_summary(const DomainSpec& domain);

/// True if p lies strictly inside the domain (all kinds are star-shaped
/// about the origin, so the test is radial).
bool contains(const DomainSpec& domain, double x, double y);

/// Domain config I/O. JSON object with fields exactly:
///   kind, radius | semi_axis_a/semi_axis_b | r0/cos_coeffs/sin_coeffs.
/// Unknown fields are rejected.
DomainSpec parse_domain_config(const std::string& json_text);
DomainSpec load_domain_config(const std::string& path);
std::string domain_config_json(const DomainSpec& domain);

}  // namespace qdrobin
