#include "qdrobin/disk.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdrobin/specfun.hpp"

namespace qdrobin {

namespace {

using specfun::bessel_j;
using specfun::bessel_root;
using specfun::find_root;

// First positive zeros j_{k,1}, k = 0..32, computed once.
const std::vector<double>& first_zeros() {
  static const std::vector<double> zeros = [] {
    std::vector<double> z(33);
    for (int k = 0; k < 33; ++k) z[k] = bessel_root(k, 1);
    return z;
  }();
  return zeros;
}

// Root of a J_k(x) = x J_{k+1}(x) on (0, j_{k,1}); unique since
// x J_{k+1}/J_k increases from 0 to infinity there.
double mode_root_nonneg(int k, double a) {
  const double jk1 = first_zeros()[k];
  auto f = [k, a](double x) { return a * bessel_j(k, x) - x * bessel_j(k + 1, x); };
  double lo = 1e-6 * jk1;
  while (f(lo) <= 0.0 && lo > 1e-280) lo *= 0.25;
  // For very large a the root crowds the right endpoint; tighten until the
  // sign flips.
  for (double off : {1e-6, 1e-9, 1e-12, 1e-14}) {
    const double hi = jk1 * (1.0 - off);
    if (f(hi) < 0.0) return find_root(f, lo, hi, 1e-14);
  }
  return jk1;  // Dirichlet limit within root tolerance
}

// Root of x J_{n-1}(x) + a J_n(x) = 0 on (j_{n-1,1}, j_{n,1}), n = |k| >= 1.
double mode_root_negative(int n, double a) {
  const double lo = first_zeros()[n - 1];
  const double hi = first_zeros()[n];
  auto f = [n, a](double x) { return x * bessel_j(n - 1, x) + a * bessel_j(n, x); };
  // For very large a the root crowds the right endpoint; tighten the bracket
  // until the sign flips.
  for (double off : {1e-6, 1e-9, 1e-12, 1e-14}) {
    const double right = hi * (1.0 - off);
    if (f(right) < 0.0) return find_root(f, lo * (1.0 + 1e-12), right, 1e-14);
  }
  return hi;  // Dirichlet limit within root tolerance
}

}  // namespace

double lambda_dirichlet_unit_disk() {
  static const double value = [] {
    const double j01 = bessel_root(0, 1);
    return j01 * j01;
  }();
  return value;
}

DiskConstants disk_constants(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("disk_constants: radius must be > 0");
  DiskConstants c;
  c.radius = radius;
  c.lambda_dirichlet = lambda_dirichlet_unit_disk() / (radius * radius);
  c.q = 2.0 / radius;
  c.area = M_PI * radius * radius;
  c.perimeter = 2.0 * M_PI * radius;
  return c;
}

DiskMode mu_disk_detail(double a, double radius, int k_max) {
  if (!(a > 0.0)) throw std::invalid_argument("mu_disk: a must be > 0");
  if (!(radius > 0.0)) throw std::invalid_argument("mu_disk: radius must be > 0");
  if (k_max < 4 || k_max > 32)
    throw std::invalid_argument("mu_disk: k_max out of range [4, 32]");

  const double a_unit = radius * a;  // mu_{R D}(a) = mu_D(R a) / R^2
  DiskMode best;
  best.mu = std::numeric_limits<double>::max();
  for (int k = -k_max; k <= k_max; ++k) {
    const double x = (k >= 0) ? mode_root_nonneg(k, a_unit) : mode_root_negative(-k, a_unit);
    const double mu = x * x;
    if (mu < best.mu) best = DiskMode{k, x, mu};
  }
  if (std::abs(best.mode) > k_max - 2)
    throw std::runtime_error("mu_disk: minimizing mode k = " + std::to_string(best.mode) +
                             " too close to the cutoff k_max = " + std::to_string(k_max) +
                             "; increase k_max");
  best.mu /= radius * radius;
  best.root /= radius;  // report the root on the radius-R scale
  return best;
}

double mu_disk(double a, double radius, int k_max) {
  return mu_disk_detail(a, radius, k_max).mu;
}

RecipeResult lambda_disk(double theta, double mass, double radius, double tol) {
  const LinkParams params(theta, mass);
  const double lambda_d = lambda_dirichlet_unit_disk() / (radius * radius);
  return solve_lambda([radius](double a) { return mu_disk(a, radius); }, params,
                      lambda_d, tol);
}

}  // namespace qdrobin
