#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qdrobin/fem.hpp"

namespace qdrobin {

namespace {

// Boundary curve sampled for moment integrals: zeta = (z - centroid)/Rhat,
// complex dz per node, arclength weight per node.
struct MomentNodes {
  std::vector<Complex> zeta;
  std::vector<Complex> dzeta;   // includes the trapezoid dt factor
  std::vector<double> ds;       // arclength weights
  double area = 0.0;
  Complex centroid;
  double rhat = 0.0;
};

MomentNodes moment_nodes(const DomainSpec& domain, int degree) {
  // Fourier content of zeta^p zbar^q d zeta grows with the basis degree and
  // the curve's own harmonics; sample well past it.
  int harmonics = 1;
  if (domain.kind == DomainKind::ellipse) harmonics = 2;
  if (domain.kind == DomainKind::polar_star)
    harmonics = 1 + static_cast<int>(std::max(domain.cos_coeffs.size(), domain.sin_coeffs.size()));
  int n = 4096;
  const int content = 8 * (2 * degree + 2) * harmonics;
  while (n < content && n < (1 << 17)) n *= 2;

  const double dt = 2.0 * M_PI / n;
  MomentNodes mn;
  mn.zeta.resize(n);
  mn.dzeta.resize(n);
  mn.ds.resize(n);

  double area = 0.0;
  Complex first_moment = 0.0;
  for (int i = 0; i < n; ++i) {
    const CurvePoint p = eval_curve(domain, dt * i);
    area += 0.5 * (p.x * p.dy - p.y * p.dx) * dt;
    // int x dA = contour int (x^2/2) dy,  int y dA = -contour int (y^2/2) dx
    first_moment += Complex(0.5 * p.x * p.x * p.dy * dt, -0.5 * p.y * p.y * p.dx * dt);
  }
  if (!(area > 0.0)) throw std::invalid_argument("steklov_q: non-positive area");
  mn.area = area;
  mn.centroid = first_moment / area;
  mn.rhat = std::sqrt(area / M_PI);

  for (int i = 0; i < n; ++i) {
    const CurvePoint p = eval_curve(domain, dt * i);
    mn.zeta[i] = (Complex(p.x, p.y) - mn.centroid) / mn.rhat;
    mn.dzeta[i] = Complex(p.dx, p.dy) * (dt / mn.rhat);
    mn.ds[i] = std::hypot(p.dx, p.dy) * dt;
  }
  return mn;
}

}  // namespace

SteklovResult steklov_q(const DomainSpec& domain, int degree) {
  if (degree < 2 || degree > 40)
    throw std::invalid_argument("steklov_q: degree out of range [2, 40]");
  validate(domain);

  const MomentNodes mn = moment_nodes(domain, degree);
  const int n = static_cast<int>(mn.zeta.size());
  const int nb = 2 * degree + 1;  // {1} + {Re zeta^k, Im zeta^k : k <= degree}

  // Bulk moments I(p, q) = int_Omega zeta^p conj(zeta)^q dA by Stokes:
  // I(p, q) = 1/(2i (q+1)) * contour int zeta^p conj(zeta)^{q+1} d zeta.
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Zero(2 * degree + 1, degree + 1);
  {
    std::vector<Complex> zp(2 * degree + 1), zbq(degree + 2);
    for (int i = 0; i < n; ++i) {
      zp[0] = 1.0;
      for (int p = 1; p <= 2 * degree; ++p) zp[p] = zp[p - 1] * mn.zeta[i];
      zbq[0] = 1.0;
      const Complex zb = std::conj(mn.zeta[i]);
      for (int q = 1; q <= degree + 1; ++q) zbq[q] = zbq[q - 1] * zb;
      for (int p = 0; p <= 2 * degree; ++p) {
        const Complex zpdz = zp[p] * mn.dzeta[i];
        for (int q = 0; q <= degree; ++q) I(p, q) += zpdz * zbq[q + 1];
      }
    }
    for (int q = 0; q <= degree; ++q)
      I.col(q) /= Complex(0.0, 2.0 * (q + 1));
  }

  // Basis order: index 0 -> constant, 2k-1 -> Re zeta^k, 2k -> Im zeta^k.
  auto basis_of = [](int idx) {
    if (idx == 0) return std::pair<bool, int>{true, 0};  // (is_re, k)
    return std::pair<bool, int>{idx % 2 == 1, (idx + 1) / 2};
  };

  Eigen::MatrixXd bulk = Eigen::MatrixXd::Zero(nb, nb);
  for (int i = 0; i < nb; ++i) {
    const auto [re_i, ki] = basis_of(i);
    for (int j = i; j < nb; ++j) {
      const auto [re_j, kj] = basis_of(j);
      const Complex Isum = I(ki + kj, 0);
      const Complex Imix = I(std::max(ki, kj), std::min(ki, kj));
      // I(ki, kj) with ki < kj is the conjugate of the stored I(kj, ki)
      const Complex Iij = (ki >= kj) ? Imix : std::conj(Imix);
      double v;
      if (re_i && re_j)
        v = 0.5 * (Isum.real() + Iij.real());
      else if (!re_i && !re_j)
        v = 0.5 * (Iij.real() - Isum.real());
      else if (re_i && !re_j)
        v = 0.5 * (Isum.imag() - Iij.imag());
      else
        v = 0.5 * (Isum.imag() + Iij.imag());
      bulk(i, j) = v;
      bulk(j, i) = v;
    }
  }

  // Boundary Gram by direct evaluation at the quadrature nodes.
  Eigen::MatrixXd H(n, nb);
  for (int i = 0; i < n; ++i) {
    Complex zk = 1.0;
    H(i, 0) = 1.0;
    for (int k = 1; k <= degree; ++k) {
      zk *= mn.zeta[i];
      H(i, 2 * k - 1) = zk.real();
      H(i, 2 * k) = zk.imag();
    }
  }
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(mn.ds.data(), n);
  Eigen::MatrixXd bdry = H.transpose() * w.asDiagonal() * H;
  bdry = 0.5 * (bdry + bdry.transpose()).eval();

  // Truncate the basis until the bulk Gram is numerically definite.
  int eff_degree = degree;
  double cond = 0.0;
  while (true) {
    const int m = 2 * eff_degree + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(bulk.topLeftCorner(m, m),
                                                      Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(m - 1);
    cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
    if (cond <= 1e12 || eff_degree == 0) break;
    --eff_degree;
  }

  const int m = 2 * eff_degree + 1;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
      bdry.topLeftCorner(m, m), bulk.topLeftCorner(m, m), Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("steklov_q: generalized eigensolver failed");
  // bulk moments live in the zeta plane; physical bulk integrals carry rhat^2
  const double q = ges.eigenvalues()(0) / (mn.rhat * mn.rhat);

  SteklovResult result;
  result.q = q;
  result.degree = degree;
  result.effective_degree = eff_degree;
  result.gram_condition = cond;
  if (!(result.q > 0.0)) throw std::runtime_error("steklov_q: non-positive eigenvalue");
  return result;
}

}  // namespace qdrobin
