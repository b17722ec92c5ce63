#pragma once

#include <functional>

// Bessel functions of the first kind (integer order, real argument) and a
// bracketed scalar root finder. Self-contained: no platform special-function
// dependencies, so results are bit-reproducible across toolchains.

namespace qdrobin::specfun {

/// Value and derivative of J_n at x.
struct BesselEval {
  int order = 0;
  double x = 0.0;
  double value = 0.0;
  double derivative = 0.0;
};

/// J_n(x) for 0 <= n <= 64, 0 <= x <= 200. Absolute error <= 1e-12.
///
/// Power series for x <= 12, backward (Miller) recurrence with the
/// J_0 + 2*sum J_{2k} = 1 normalization otherwise. The power series is not
/// used above x = 12 even for large orders: its alternating terms grow like
/// e^x before cancelling, which destroys double precision for n >~ 10.
double bessel_j(int n, double x);

/// J_n'(x) from the recurrence (J_{n-1} - J_{n+1})/2; J_0' = -J_1.
double bessel_j_prime(int n, double x);

/// Value and derivative together.
BesselEval bessel_eval(int n, double x);

/// k-th positive zero j_{n,k} of J_n, for n <= 32, k <= 16.
/// Absolute error <= 1e-11. Row n = 0 is bracketed by McMahon asymptotics;
/// higher orders are bracketed by the interlacing j_{n-1,k} < j_{n,k} < j_{n-1,k+1}.
double bessel_root(int n, int k);

/// Root of f on [lo, hi] by Brent's method. Requires f(lo)*f(hi) <= 0.
/// Deterministic; terminates when the bracket width is below tol.
/// Throws std::invalid_argument on an invalid bracket.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-13);

}  // namespace qdrobin::specfun
