#include "qdrobin/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qdrobin/disk.hpp"

namespace qdrobin {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0))
    throw std::invalid_argument(std::string(what) + " must be > 0");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", v);
  return buf;
}

}  // namespace

MuBounds mu_bounds(double lambda_dirichlet, double q, double perimeter, double a) {
  require_positive(lambda_dirichlet, "mu_bounds: lambda_dirichlet");
  require_positive(q, "mu_bounds: q");
  require_positive(perimeter, "mu_bounds: perimeter");
  require_positive(a, "mu_bounds: a");
  MuBounds b;
  b.lower = lambda_dirichlet / (1.0 + lambda_dirichlet / (q * a));
  b.upper = lambda_dirichlet / (1.0 + 4.0 * M_PI / (perimeter * a));
  return b;
}

double b_function(double lambda_dirichlet, double vartheta_value, double mass, double xi) {
  require_positive(lambda_dirichlet, "b_function: lambda_dirichlet");
  require_positive(vartheta_value, "b_function: vartheta");
  require_positive(xi, "b_function: xi");
  if (!(mass >= 0.0)) throw std::invalid_argument("b_function: mass must be >= 0");
  const double u = xi / vartheta_value;
  return -u + std::sqrt((u + mass) * (u + mass) + lambda_dirichlet);
}

LambdaBounds lambda_bounds(double lambda_dirichlet, double q, double perimeter,
                           double theta, double mass) {
  require_positive(q, "lambda_bounds: q");
  require_positive(perimeter, "lambda_bounds: perimeter");
  const double vt = vartheta(theta);
  LambdaBounds b;
  b.lower = b_function(lambda_dirichlet, vt, mass, lambda_dirichlet / (2.0 * q));
  b.upper = b_function(lambda_dirichlet, vt, mass, 2.0 * M_PI / perimeter);
  return b;
}

double benguria_lower(double area, double theta, double mass) {
  require_positive(area, "benguria_lower: area");
  if (mass != 0.0)
    throw std::invalid_argument("benguria_lower: defined for the massless case only");
  const double vt = vartheta(theta);
  return std::sqrt(2.0 * M_PI / area) * std::min(vt, 1.0 / vt);
}

RaulotBound raulot_q_lower(double inradius, double kappa_min) {
  require_positive(inradius, "raulot_q_lower: inradius");
  RaulotBound r;
  const double denom = 1.0 - 0.5 * inradius * kappa_min;
  if (!(denom > 0.0)) return r;  // inapplicable
  r.applicable = true;
  r.value = 1.0 / (inradius * denom);
  return r;
}

bool fk_all_condition(double area, double q) {
  require_positive(area, "fk_all_condition: area");
  require_positive(q, "fk_all_condition: q");
  return std::sqrt(area / M_PI) * q >= 0.5 * lambda_dirichlet_unit_disk();
}

FkSomeParams fk_some_params(double lambda_dirichlet, double q, double area, double mass,
                            const MuEvaluator& mu_disk_unit) {
  require_positive(lambda_dirichlet, "fk_some_params: lambda_dirichlet");
  require_positive(q, "fk_some_params: q");
  require_positive(area, "fk_some_params: area");
  if (!(mass >= 0.0)) throw std::invalid_argument("fk_some_params: mass must be >= 0");

  const double lambda_disk = lambda_dirichlet_unit_disk();
  if (fk_all_condition(area, q))
    throw FkAllApplies("fk_some_params: the all-parameter condition already holds");
  const double ratio = (area / M_PI) * (lambda_dirichlet / lambda_disk);
  // a C^2 non-disk has a genuine gap over the same-area disk; a ratio at or
  // inside rounding distance of 1 means the inputs describe a disk or a bad
  // upstream solve
  if (!(ratio > 1.0 + 1e-9))
    throw DirichletFkViolated(
        "fk_some_params: Dirichlet eigenvalue at or below the same-area disk value; "
        "check the upstream solve");

  FkSomeParams p;
  const double scale = std::sqrt(area / M_PI);
  p.a_threshold =
      lambda_dirichlet / (ratio - 1.0) * (1.0 / q - (2.0 / lambda_disk) * scale);
  const double mu_same_area = mu_disk_unit(scale * p.a_threshold) / (scale * scale);
  p.theta_threshold =
      vartheta_inv(p.a_threshold / (std::sqrt(mu_same_area + mass * mass) + mass));
  return p;
}

const char* to_string(QSource source) {
  return source == QSource::steklov ? "steklov" : "raulot";
}

std::string BoundReport::to_kv() const {
  std::ostringstream os;
  os << "domain = " << domain_id << '\n';
  os << "theta = " << fmt(theta) << '\n';
  os << "m = " << fmt(mass) << '\n';
  os << "area = " << fmt(area) << '\n';
  os << "perimeter = " << fmt(perimeter) << '\n';
  os << "lambda_dirichlet = " << fmt(lambda_dirichlet) << '\n';
  os << "q = " << fmt(q) << '\n';
  os << "q_source = " << to_string(q_source) << '\n';
  os << "lower_B = " << fmt(lower_b) << '\n';
  os << "upper_B = " << fmt(upper_b) << '\n';
  if (benguria) os << "benguria_C = " << fmt(*benguria) << '\n';
  if (lambda) os << "lambda = " << fmt(*lambda) << '\n';
  os << "fk_all = " << (fk_all_flag ? "true" : "false") << '\n';
  if (fk_a_threshold) os << "fk_a_threshold = " << fmt(*fk_a_threshold) << '\n';
  if (fk_theta_threshold) os << "fk_theta_threshold = " << fmt(*fk_theta_threshold) << '\n';
  return os.str();
}

std::string BoundReport::to_csv() const {
  std::ostringstream os;
  os << "a,mu_lower,mu,mu_upper\n";
  for (const auto& row : mu_rows)
    os << fmt(row[0]) << ',' << fmt(row[1]) << ',' << fmt(row[2]) << ',' << fmt(row[3])
       << '\n';
  return os.str();
}

}  // namespace qdrobin
