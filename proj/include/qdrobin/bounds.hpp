#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdrobin/link.hpp"

// Closed-form geometric bounds and Faber-Krahn conditions. Everything here
// is pure formula evaluation on (Lambda, q, perimeter, area) inputs; the
// unit-disk Dirichlet constant is pinned to j_{0,1}^2 at full precision.

namespace qdrobin {

struct MuBounds {
  double lower = 0.0;  // Lambda / (1 + Lambda/(q a))
  double upper = 0.0;  // Lambda / (1 + 4 pi/(|bdry| a))
};

/// Two-sided bound for mu(a) from the Dirichlet eigenvalue, the harmonic
/// trace constant q, and the perimeter.
MuBounds mu_bounds(double lambda_dirichlet, double q, double perimeter, double a);

/// B(xi) = -xi/vartheta + sqrt((xi/vartheta + m)^2 + Lambda); positive and
/// strictly decreasing in xi, with limits sqrt(Lambda + m^2) at 0+ and m at
/// infinity.
double b_function(double lambda_dirichlet, double vartheta_value, double mass, double xi);

struct LambdaBounds {
  double lower = 0.0;  // B at xi = Lambda/(2q)
  double upper = 0.0;  // B at xi = 2 pi/|bdry|
};

LambdaBounds lambda_bounds(double lambda_dirichlet, double q, double perimeter,
                           double theta, double mass);

/// Area-only lower bound sqrt(2 pi/area) min{vartheta, 1/vartheta} for the
/// massless case. Throws if called in an m != 0 context.
double benguria_lower(double area, double theta, double mass = 0.0);

struct RaulotBound {
  bool applicable = false;
  double value = 0.0;  // (1/rho) (1 - rho kappa_min/2)^{-1} when applicable
};

/// Lower bound for q from inradius and minimum curvature; inapplicable
/// (reported, not fabricated) when 1 - rho kappa_min/2 <= 0.
RaulotBound raulot_q_lower(double inradius, double kappa_min);

/// Scale-invariant condition sqrt(area/pi) q >= Lambda_disk/2 under which
/// the same-area disk minimizes both eigenvalue families for every boundary
/// parameter.
bool fk_all_condition(double area, double q);

/// Thrown by fk_some_params when fk_all_condition already holds.
struct FkAllApplies : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
/// Thrown by fk_some_params when Lambda <= pi Lambda_disk/area, which a C^2
/// non-disk cannot satisfy; it signals a numerical error upstream.
struct DirichletFkViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FkSomeParams {
  double a_threshold = 0.0;      // disk comparison holds for a >= this
  double theta_threshold = 0.0;  // and for theta <= this
};

/// Parameter thresholds (A, Theta_m) of the restricted Faber-Krahn regime
/// for domains failing fk_all_condition. mu_disk_unit evaluates the
/// unit-disk eigencurve; the same-area disk is reached through the scaling
/// law mu_{tD}(a) = mu_D(t a)/t^2.
FkSomeParams fk_some_params(double lambda_dirichlet, double q, double area, double mass,
                            const MuEvaluator& mu_disk_unit);

enum class QSource { steklov, raulot };

struct BoundReport {
  std::string domain_id;
  double theta = 0.0;
  double mass = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  double lambda_dirichlet = 0.0;
  double q = 0.0;
  QSource q_source = QSource::steklov;
  double lower_b = 0.0;
  double upper_b = 0.0;
  std::optional<double> benguria;  // m = 0 only
  std::optional<double> lambda;    // computed eigenvalue, when requested
  std::vector<std::array<double, 4>> mu_rows;  // (a, lower, mu, upper)
  bool fk_all_flag = false;
  std::optional<double> fk_a_threshold;
  std::optional<double> fk_theta_threshold;

  /// Flat key-value text block, one "key = value" per line.
  std::string to_kv() const;

  /// The mu sandwich rows as CSV with a header (a,mu_lower,mu,mu_upper).
  std::string to_csv() const;
};

const char* to_string(QSource source);

}  // namespace qdrobin
