#include "qdrobin/fem.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "qdrobin/disk.hpp"
#include "qdrobin/specfun.hpp"

namespace qdrobin {

namespace {

// Barycentric gradient data of one triangle: grad lambda_i = (b_i, c_i)/(2T).
struct TriangleGeometry {
  double area;
  std::array<double, 3> b, c;
};

TriangleGeometry triangle_geometry(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  const auto& p0 = mesh.nodes[tri[0]];
  const auto& p1 = mesh.nodes[tri[1]];
  const auto& p2 = mesh.nodes[tri[2]];
  TriangleGeometry g;
  g.b = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
  g.c = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
  g.area = mesh.triangle_area(t);
  return g;
}

template <typename Scalar>
void add_mass(const Mesh& mesh, std::vector<Eigen::Triplet<Scalar>>& trips) {
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const double w = mesh.triangle_area(t) / 12.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[i], tri[j], Scalar(w * (i == j ? 2.0 : 1.0)));
  }
}

template <typename Scalar>
void add_stiffness(const Mesh& mesh, std::vector<Eigen::Triplet<Scalar>>& trips) {
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const TriangleGeometry g = triangle_geometry(mesh, t);
    const double f = 1.0 / (4.0 * g.area);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[i], tri[j], Scalar(f * (g.b[i] * g.b[j] + g.c[i] * g.c[j])));
  }
}

template <typename Scalar>
void add_boundary_mass(const Mesh& mesh, std::vector<Eigen::Triplet<Scalar>>& trips) {
  for (const auto& e : mesh.boundary_edges) {
    const auto& p = mesh.nodes[e[0]];
    const auto& q = mesh.nodes[e[1]];
    const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
    const double w = len / 6.0;
    trips.emplace_back(e[0], e[0], Scalar(2.0 * w));
    trips.emplace_back(e[1], e[1], Scalar(2.0 * w));
    trips.emplace_back(e[0], e[1], Scalar(w));
    trips.emplace_back(e[1], e[0], Scalar(w));
  }
}

// 4 int dzbar u conj(dzbar v): per triangle A_ij = conj(g_i) g_j / (4T) with
// g_i = b_i + i c_i. Hermitian, positive semi-definite, rank one per element.
void add_dbar(const Mesh& mesh, std::vector<Eigen::Triplet<Complex>>& trips) {
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[t];
    const TriangleGeometry g = triangle_geometry(mesh, t);
    const double f = 1.0 / (4.0 * g.area);
    std::array<Complex, 3> gz;
    for (int i = 0; i < 3; ++i) gz[i] = Complex(g.b[i], g.c[i]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[i], tri[j], f * std::conj(gz[i]) * gz[j]);
  }
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> from_triplets(int n, std::vector<Eigen::Triplet<Scalar>>& trips) {
  Eigen::SparseMatrix<Scalar> m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

// Deterministic start vector with nonzero overlap with the ground mode.
template <typename Scalar>
Eigen::VectorX<Scalar> start_vector(int n);

template <>
Eigen::VectorX<double> start_vector<double>(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * std::sin(i + 1.0);
  return v;
}

template <>
Eigen::VectorX<Complex> start_vector<Complex>(int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i)
    v[i] = Complex(1.0 + 1e-3 * std::sin(i + 1.0), 1e-3 * std::cos(2.0 * i + 0.5));
  return v;
}

// Shifted inverse iteration for the smallest eigenvalue of the pencil
// (A, M), A self-adjoint positive definite. Starts unshifted; when clustered
// low modes slow the plain iteration down, restarts with a Rayleigh-based
// shift kept below the current estimate so the factored operator stays
// definite and the target eigenvalue stays the nearest one. Stops when
// ||Av - mu Mv||/||Mv|| <= tol * max(1, mu); the rounding floor of the raw
// residual sits near mu * 5e-12, so an absolute test cannot be met for
// eigenvalues well above one.
template <typename Scalar>
EigenResult smallest_pencil_eigenvalue(const Eigen::SparseMatrix<Scalar>& A,
                                       const Eigen::SparseMatrix<Scalar>& M, double tol,
                                       int max_iterations) {
  using Solver = Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>>;
  auto solver = std::make_unique<Solver>();
  solver->compute(A);
  if (solver->info() != Eigen::Success)
    throw std::runtime_error("eigensolver: factorization failed (singular pencil)");

  const int n = static_cast<int>(A.rows());
  Eigen::VectorX<Scalar> x = start_vector<Scalar>(n);
  x /= std::sqrt(std::abs(Eigen::numext::real(x.dot(M * x))));

  EigenResult result;
  result.dofs = n;
  double shift = 0.0;
  double best_res = std::numeric_limits<double>::max();
  double mu_at_best = 0.0;
  int since_progress = 0;
  constexpr int kRestartPeriod = 60;
  constexpr int kStagnationWindow = 50;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorX<Scalar> y = solver->solve(M * x);
    const double norm_m = std::sqrt(std::abs(Eigen::numext::real(y.dot(M * y))));
    if (!(norm_m > 0.0) || !std::isfinite(norm_m))
      throw std::runtime_error("eigensolver: breakdown in iteration");
    x = y / norm_m;
    const Eigen::VectorX<Scalar> ax = A * x;
    const Eigen::VectorX<Scalar> mx = M * x;
    const double mu = Eigen::numext::real(x.dot(ax)) / Eigen::numext::real(x.dot(mx));
    const double res = (ax - Scalar(mu) * mx).norm() / mx.norm();
    result.iterations = it;

    // Converged, or pinned at the rounding floor of this discretization: the
    // floor grows with refinement, so a residual that stopped halving while
    // the eigenvalue estimate sits still to machine precision is accepted
    // and reported as-is.
    const bool converged = res <= tol * std::max(1.0, std::abs(mu));
    if (res < 0.5 * best_res) {
      best_res = res;
      mu_at_best = mu;
      since_progress = 0;
    } else {
      ++since_progress;
    }
    const bool at_floor = since_progress >= kStagnationWindow &&
                          std::abs(mu - mu_at_best) <= 1e-13 * std::max(1.0, std::abs(mu));
    if (converged || at_floor) {
      result.value = mu;
      result.residual = res;
      if constexpr (std::is_same_v<Scalar, Complex>)
        result.vector = x;
      else
        result.vector = x.template cast<Complex>();
      return result;
    }
    if (it % kRestartPeriod == 0) {
      const double next_shift = mu - 3.0 * res - 1e-9 * std::abs(mu);
      if (next_shift > shift) {
        auto shifted = std::make_unique<Solver>();
        shifted->compute(A - Scalar(next_shift) * M);
        if (shifted->info() == Eigen::Success) {
          solver = std::move(shifted);
          shift = next_shift;
        }
      }
    }
  }
  throw std::runtime_error("eigensolver: inverse iteration did not converge within " +
                           std::to_string(max_iterations) + " steps");
}

std::vector<int> interior_map(const Mesh& mesh) {
  std::vector<char> on_boundary(mesh.node_count(), 0);
  for (int b : mesh.boundary_nodes) on_boundary[b] = 1;
  std::vector<int> map(mesh.node_count(), -1);
  int k = 0;
  for (int i = 0; i < mesh.node_count(); ++i)
    if (!on_boundary[i]) map[i] = k++;
  return map;
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> restrict_interior(const Eigen::SparseMatrix<Scalar>& A,
                                              const std::vector<int>& map, int n_interior) {
  std::vector<Eigen::Triplet<Scalar>> trips;
  trips.reserve(A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k)
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(A, k); it; ++it) {
      const int r = map[it.row()], c = map[it.col()];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  Eigen::SparseMatrix<Scalar> out(n_interior, n_interior);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

}  // namespace

EigenResult dirichlet_lambda(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> kt, mt;
  add_stiffness<double>(mesh, kt);
  add_mass<double>(mesh, mt);
  const SparseD K = from_triplets<double>(mesh.node_count(), kt);
  const SparseD M = from_triplets<double>(mesh.node_count(), mt);

  const std::vector<int> map = interior_map(mesh);
  const int n_interior = mesh.node_count() - static_cast<int>(mesh.boundary_nodes.size());
  const SparseD Ki = restrict_interior(K, map, n_interior);
  const SparseD Mi = restrict_interior(M, map, n_interior);
  return smallest_pencil_eigenvalue<double>(Ki, Mi, 1e-10, 500);
}

DbarRobinForm::DbarRobinForm(const Mesh& mesh) {
  std::vector<Eigen::Triplet<Complex>> bt, et, mt;
  add_dbar(mesh, bt);
  add_boundary_mass<Complex>(mesh, et);
  add_mass<Complex>(mesh, mt);
  bulk_ = from_triplets<Complex>(mesh.node_count(), bt);
  boundary_mass_ = from_triplets<Complex>(mesh.node_count(), et);
  mass_ = from_triplets<Complex>(mesh.node_count(), mt);
}

EigenResult DbarRobinForm::solve(double a, double tol, int max_iterations) const {
  if (!(a > 0.0)) throw std::invalid_argument("dbar_robin_mu: a must be > 0");
  const SparseC A = bulk_ + Complex(a) * boundary_mass_;
  return smallest_pencil_eigenvalue<Complex>(A, mass_, tol, max_iterations);
}

EigenResult dbar_robin_mu(const Mesh& mesh, double a) {
  return DbarRobinForm(mesh).solve(a);
}

RobinForm::RobinForm(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> kt, et, mt;
  add_stiffness<double>(mesh, kt);
  add_boundary_mass<double>(mesh, et);
  add_mass<double>(mesh, mt);
  stiffness_ = from_triplets<double>(mesh.node_count(), kt);
  boundary_mass_ = from_triplets<double>(mesh.node_count(), et);
  mass_ = from_triplets<double>(mesh.node_count(), mt);
}

EigenResult RobinForm::solve(double a, double tol, int max_iterations) const {
  if (!(a > 0.0)) throw std::invalid_argument("robin_mu: a must be > 0");
  const SparseD A = stiffness_ + a * boundary_mass_;
  return smallest_pencil_eigenvalue<double>(A, mass_, tol, max_iterations);
}

EigenResult robin_mu(const Mesh& mesh, double a) {
  return RobinForm(mesh).solve(a);
}

namespace {

void check_grid(const std::vector<double>& a_grid) {
  if (a_grid.empty()) throw std::invalid_argument("mu_curve: empty grid");
  double prev = 0.0;
  for (double a : a_grid) {
    if (!(a > prev))
      throw std::invalid_argument("mu_curve: grid must be strictly increasing and positive");
    prev = a;
  }
}

void finish_curve(SpectralCurve& curve) {
  const auto& s = curve.samples;
  curve.slope_origin = s.front().mu / s.front().a;
  curve.monotone = true;
  curve.concave = true;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i].mu > s[i - 1].mu)) curve.monotone = false;
  for (std::size_t i = 2; i < s.size(); ++i) {
    const double s1 = (s[i - 1].mu - s[i - 2].mu) / (s[i - 1].a - s[i - 2].a);
    const double s2 = (s[i].mu - s[i - 1].mu) / (s[i].a - s[i - 1].a);
    if (!(s2 < s1)) curve.concave = false;
  }
}

}  // namespace

SpectralCurve mu_curve(const DomainSpec& domain, const std::vector<double>& a_grid,
                       int level) {
  check_grid(a_grid);
  const Mesh mesh = build_mesh(domain, level);
  const DbarRobinForm form(mesh);
  SpectralCurve curve;
  curve.domain_id = domain.id();
  curve.samples.resize(a_grid.size());
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const EigenResult r = form.solve(a_grid[i]);
    curve.samples[i] = {a_grid[i], r.value, r.residual};
  }
  finish_curve(curve);
  return curve;
}

SpectralCurve mu_curve_disk(double radius, const std::vector<double>& a_grid, int k_max) {
  check_grid(a_grid);
  SpectralCurve curve;
  curve.domain_id = DomainSpec::disk(radius).id();
  curve.samples.resize(a_grid.size());
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double a = a_grid[i];
    const DiskMode mode = mu_disk_detail(a, radius, k_max);
    // residual of the mode equation at the reported root (unit-disk scale)
    const double x = mode.root * radius;
    const double au = a * radius;
    const int k = mode.mode;
    const double res =
        (k >= 0) ? std::abs(au * specfun::bessel_j(k, x) - x * specfun::bessel_j(k + 1, x))
                 : std::abs(x * specfun::bessel_j(-k - 1, x) + au * specfun::bessel_j(-k, x));
    curve.samples[i] = {a, mode.mu, res};
  }
  finish_curve(curve);
  return curve;
}

MuEvaluator curve_evaluator(SpectralCurve curve) {
  if (curve.samples.empty())
    throw std::invalid_argument("curve_evaluator: empty curve");
  return [curve = std::move(curve)](double a) {
    const auto& s = curve.samples;
    if (!(a > 0.0)) throw std::invalid_argument("curve evaluator: a must be > 0");
    if (a <= s.front().a) return curve.slope_origin * a;
    if (a >= s.back().a) {
      if (s.size() == 1) return s.back().mu;
      const auto& p = s[s.size() - 2];
      const auto& q = s.back();
      const double slope = (q.mu - p.mu) / (q.a - p.a);
      return q.mu + slope * (a - q.a);
    }
    std::size_t lo = 0, hi = s.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (s[mid].a <= a ? lo : hi) = mid;
    }
    const double w = (a - s[lo].a) / (s[hi].a - s[lo].a);
    return (1.0 - w) * s[lo].mu + w * s[hi].mu;
  };
}

}  // namespace qdrobin
