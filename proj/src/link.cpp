#include "qdrobin/link.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdrobin/specfun.hpp"

namespace qdrobin {

namespace {
constexpr double kHalfPi = 0.5 * M_PI;
}

double vartheta(double theta) {
  if (!(theta > -kHalfPi && theta < kHalfPi))
    throw std::invalid_argument("vartheta: theta must lie strictly inside (-pi/2, pi/2)");
  // (1 - sin t)/cos t = tan(pi/4 - t/2), stable through theta -> pi/2
  return std::tan(0.25 * M_PI - 0.5 * theta);
}

double vartheta_inv(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("vartheta_inv: argument must be > 0");
  return kHalfPi - 2.0 * std::atan(x);
}

LinkParams::LinkParams(double theta_, double mass_) : theta(theta_), mass(mass_) {
  if (!(mass >= 0.0)) throw std::invalid_argument("LinkParams: mass must be >= 0");
  vartheta_value = vartheta(theta);
}

double p_parabola(const LinkParams& params, double a) {
  const double u = a / params.vartheta_value - params.mass;
  return u * u - params.mass * params.mass;
}

std::pair<double, double> t_forward(const LinkParams& params, double lambda) {
  if (!(lambda > params.mass))
    throw std::invalid_argument("t_forward: requires lambda > m");
  return {params.vartheta_value * (lambda + params.mass),
          lambda * lambda - params.mass * params.mass};
}

std::pair<double, double> t_inverse(double mass, double a, double mu) {
  if (!(a > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("t_inverse: requires a > 0 and mu > 0");
  if (!(mass >= 0.0)) throw std::invalid_argument("t_inverse: mass must be >= 0");
  const double lambda = std::sqrt(mu + mass * mass);
  const double theta = vartheta_inv(a / (lambda + mass));
  return {theta, lambda};
}

RecipeResult solve_lambda(const MuEvaluator& mu_eval, const LinkParams& params,
                          std::optional<double> dirichlet_hint, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve_lambda: tol must be > 0");
  const double vt = params.vartheta_value;
  const double m = params.mass;

  int evals = 0;
  auto g = [&](double a) {
    ++evals;
    return p_parabola(params, a) - mu_eval(a);
  };

  // Upper bracket: with a Dirichlet hint Lambda, p exceeds Lambda >= mu at
  // a = vt (sqrt(Lambda + m^2) + m); pad slightly so discrete curves that
  // overshoot the hint still change sign. Otherwise double until g > 0.
  double hi = dirichlet_hint
                  ? vt * (std::sqrt(*dirichlet_hint + m * m) + m) * (1.0 + 1e-9)
                  : vt * std::max(m, 1.0);
  int doublings = 0;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (++doublings > 60)
      throw std::runtime_error("solve_lambda: upper bracket expansion failed; "
                               "the evaluator does not behave like an eigencurve");
  }

  // Lower bracket: g < 0 for small a (p starts at 0 with slope <= 0, the
  // curve rises with positive slope). Halve until the sign is negative.
  double lo = (m > 0.0) ? vt * m : std::min(0.5 * hi, vt);
  int halvings = 0;
  while (g(lo) >= 0.0) {
    lo *= 0.5;
    if (++halvings > 60)
      throw std::runtime_error("solve_lambda: lower bracket contraction failed; "
                               "the evaluator does not behave like an eigencurve");
  }

  const double a_star = specfun::find_root([&](double a) { return g(a); }, lo, hi, tol);

  RecipeResult r;
  r.a_star = a_star;
  r.lambda = a_star / vt - m;
  r.residual = std::abs(mu_eval(a_star) - p_parabola(params, a_star));
  r.evaluations = evals;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  return r;
}

BoundClassification classify_bound(const MuEvaluator& mu_eval, double mass, double bound,
                                   double theta, double tol_band) {
  if (!(bound > 0.0)) throw std::invalid_argument("classify_bound: bound must be > 0");
  if (!(mass >= 0.0)) throw std::invalid_argument("classify_bound: mass must be >= 0");
  const double vt = vartheta(theta);
  BoundClassification c;
  c.theta = theta;
  c.a = vt * (bound + mass);
  c.margin = mu_eval(c.a) - (bound * bound - mass * mass);
  if (std::abs(c.margin) <= tol_band)
    c.verdict = BoundClass::equal_within_tol;
  else if (c.margin > 0.0)
    c.verdict = BoundClass::strict_lower;  // mu > B^2 - m^2  <=>  lambda > B
  else
    c.verdict = BoundClass::strict_upper;
  return c;
}

double a_of_theta(const std::function<double(double)>& lambda0_eval, double theta,
                  double mass) {
  const double vt = vartheta(theta);
  const double lambda0 = lambda0_eval(theta);
  if (!(lambda0 > mass))
    throw std::invalid_argument("a_of_theta: reference eigenvalue must exceed m");
  return vt * (lambda0 + mass);
}

double theta_of_a(const MuEvaluator& mu0_eval, double a, double mass) {
  if (!(a > 0.0)) throw std::invalid_argument("theta_of_a: a must be > 0");
  const double mu0 = mu0_eval(a);
  if (!(mu0 > 0.0))
    throw std::invalid_argument("theta_of_a: reference curve must be positive");
  return vartheta_inv(a / (std::sqrt(mu0 + mass * mass) + mass));
}

double antunes_p(const MuEvaluator& mu_eval, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("antunes_p: a must be > 0");
  return mu_eval(a) - a * a;
}

}  // namespace qdrobin
