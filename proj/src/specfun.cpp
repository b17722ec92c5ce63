#include "qdrobin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdrobin::specfun {

namespace {

constexpr int kMaxOrder = 64;
constexpr double kMaxArgument = 200.0;
constexpr double kSeriesCutoff = 12.0;

void check_range(int n, double x) {
  if (n < 0 || n > kMaxOrder)
    throw std::invalid_argument("bessel_j: order out of range [0, 64], got " +
                                std::to_string(n));
  if (!(x >= 0.0) || x > kMaxArgument)
    throw std::invalid_argument("bessel_j: argument out of range [0, 200]");
}

// Ascending power series J_n(x) = sum_m (-1)^m (x/2)^(n+2m) / (m! (n+m)!).
// Valid for x <= 12 where the largest term stays below ~1e4, so the
// alternating sum keeps full double accuracy at the 1e-12 absolute target.
double series_j(int n, double x) {
  const double half = 0.5 * x;
  // term_0 = (x/2)^n / n!
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / static_cast<double>(i);
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -(half * half) / (static_cast<double>(m) * static_cast<double>(n + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// Miller backward recurrence: run J_{k-1} = (2k/x) J_k - J_{k+1} down from a
// start order in the deep decay region, normalize via J_0 + 2 sum J_{2k} = 1.
double miller_j(int n, double x) {
  const int start0 = std::max(n, static_cast<int>(std::ceil(x)));
  int m = start0 + 64;
  if (m % 2 != 0) ++m;  // even start keeps the normalization sum aligned

  double jp1 = 0.0;   // J_{k+1}
  double jk = 1e-30;  // J_k (arbitrary seed)
  double result = (n == m) ? jk : 0.0;
  double norm = 0.0;  // accumulates J_0 + 2 sum_{k even >= 2} J_k

  for (int k = m; k >= 1; --k) {
    double jm1 = (2.0 * k / x) * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (k - 1 == n) result = jk;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jk : 2.0 * jk;
    if (std::abs(jk) > 1e250) {  // rescale to avoid overflow
      jk *= 1e-250;
      jp1 *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  check_range(n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff) return series_j(n, x);
  return miller_j(n, x);
}

double bessel_j_prime(int n, double x) {
  check_range(n, x);
  if (n == 0) return -bessel_j(1, x);
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

BesselEval bessel_eval(int n, double x) {
  return BesselEval{n, x, bessel_j(n, x), bessel_j_prime(n, x)};
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be > 0");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("find_root: f(lo) and f(hi) have the same sign");

  // Brent (1973): inverse quadratic / secant steps guarded by bisection.
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.22e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {  // inverse quadratic interpolation
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

namespace {

// McMahon expansion for zeros of J_0: j_{0,k} ~ b + 1/(8b) - 124/(3(8b)^3),
// b = (k - 1/4) pi. Accurate to ~1e-4 already at k = 1; used only to bracket.
double mcmahon_j0(int k) {
  const double b = (static_cast<double>(k) - 0.25) * M_PI;
  const double e = 8.0 * b;
  return b + 1.0 / e - 124.0 / (3.0 * e * e * e);
}

double refine_root(int n, double lo, double hi) {
  return find_root([n](double x) { return bessel_j(n, x); }, lo, hi, 1e-13);
}

}  // namespace

double bessel_root(int n, int k) {
  if (n < 0 || n > 32) throw std::invalid_argument("bessel_root: order out of range [0, 32]");
  if (k < 1 || k > 16) throw std::invalid_argument("bessel_root: index out of range [1, 16]");

  // Row 0 from McMahon brackets, then walk up in order using interlacing:
  // j_{n-1,k} < j_{n,k} < j_{n-1,k+1}. Row n-1 must extend one index past row n.
  const int row_len = k + n + 1;
  std::vector<double> row(row_len + 1);
  for (int i = 1; i <= row_len; ++i) {
    const double guess = mcmahon_j0(i);
    row[i] = refine_root(0, guess - 0.6, guess + 0.6);
  }
  for (int order = 1; order <= n; ++order) {
    const int len = row_len - order;
    std::vector<double> next(row.size());
    for (int i = 1; i <= len; ++i) {
      const double eps = 1e-9 * std::max(1.0, row[i]);
      next[i] = refine_root(order, row[i] + eps, row[i + 1] - eps);
    }
    row.swap(next);
  }
  return row[k];
}

}  // namespace qdrobin::specfun
