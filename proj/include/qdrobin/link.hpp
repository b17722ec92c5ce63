#pragma once

#include <functional>
#include <optional>
#include <utility>

// The eigenvalue transfer machinery: the boundary-parameter map vartheta,
// the (theta, lambda) <-> (a, mu) transformation, the parabola whose unique
// intersection with an eigencurve a -> mu(a) characterizes the first Dirac
// eigenvalue, and the classifier that turns mu-comparisons into
// lambda-bounds.

namespace qdrobin {

/// Evaluator for an eigencurve a -> mu(a). Must be defined for all a > 0 and
/// return values in (0, Lambda); safe for concurrent invocation if the
/// caller needs it.
using MuEvaluator = std::function<double(double)>;

/// vartheta(theta) = (1 - sin theta)/cos theta, a strictly decreasing
/// bijection (-pi/2, pi/2) -> (0, inf). Throws outside the open interval.
double vartheta(double theta);

/// Inverse map, theta = pi/2 - 2 atan(x) for x > 0.
double vartheta_inv(double x);

struct LinkParams {
  double theta = 0.0;          // in (-pi/2, pi/2)
  double mass = 0.0;           // m >= 0
  double vartheta_value = 1.0; // cached vartheta(theta)

  LinkParams(double theta, double mass);
};

/// p_{theta,m}(a) = (a/vartheta - m)^2 - m^2. Negative on (0, 2 m vartheta),
/// convex, unbounded above.
double p_parabola(const LinkParams& params, double a);

/// Forward transform (theta, lambda) -> (a, mu) = (vartheta (lambda+m), lambda^2 - m^2),
/// defined for lambda > m.
std::pair<double, double> t_forward(const LinkParams& params, double lambda);

/// Inverse transform (a, mu) -> (theta, lambda); lambda = sqrt(mu + m^2).
std::pair<double, double> t_inverse(double mass, double a, double mu);

struct RecipeResult {
  double a_star = 0.0;     // unique intersection parameter
  double lambda = 0.0;     // a_star/vartheta - m
  double residual = 0.0;   // |mu(a_star) - p(a_star)|
  int evaluations = 0;     // mu-evaluator calls spent
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// First nonnegative Dirac eigenvalue from an eigencurve: the root a* of
/// g(a) = p_{theta,m}(a) - mu(a), bracketed from the curve asymptotics
/// (g < 0 near 0, g > 0 for large a) and solved by Brent. dirichlet_hint,
/// when given, is the Dirichlet eigenvalue of the same domain and pins the
/// upper bracket at vartheta (sqrt(Lambda + m^2) + m); otherwise the upper
/// end doubles until g > 0 (at most 60 times).
RecipeResult solve_lambda(const MuEvaluator& mu_eval, const LinkParams& params,
                          std::optional<double> dirichlet_hint = std::nullopt,
                          double tol = 1e-11);

enum class BoundClass { equal_within_tol, strict_lower, strict_upper };

struct BoundClassification {
  BoundClass verdict = BoundClass::equal_within_tol;
  double theta = 0.0;   // paired boundary angle
  double a = 0.0;       // paired curve parameter
  double margin = 0.0;  // mu(a) - (B^2 - m^2)
};

/// Decide whether B equals, strictly lower-bounds, or strictly upper-bounds
/// lambda(theta, m) by the sign of mu(a) - (B^2 - m^2) at the paired
/// a = vartheta(theta) (B + m). A margin inside tol_band is reported as
/// equal_within_tol rather than promoted to a strict claim.
BoundClassification classify_bound(const MuEvaluator& mu_eval, double mass, double bound,
                                   double theta, double tol_band = 1e-9);

/// Paired parameters for comparing two domains against a reference domain
/// Omega_0: a(theta) = vartheta(theta) (lambda_0(theta) + m) and
/// theta(a) = vartheta^{-1}(a / (sqrt(mu_0(a) + m^2) + m)).
double a_of_theta(const std::function<double(double)>& lambda0_eval, double theta,
                  double mass);
double theta_of_a(const MuEvaluator& mu0_eval, double a, double mass);

/// The shifted functional mu(a) - a^2; its unique positive zero is the
/// infinite-mass eigenvalue lambda(0, 0).
double antunes_p(const MuEvaluator& mu_eval, double a);

}  // namespace qdrobin
