#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qdrobin/bounds.hpp"
#include "qdrobin/disk.hpp"

using namespace qdrobin;

namespace {
constexpr double kLambdaDisk = 5.7831859629467850;
constexpr double kRootJ0eqJ1 = 1.4346956508195632;
// frozen arithmetic oracles
constexpr double kLowerB = 1.3601816730367373;   // B at xi = Lambda/(2 q), unit disk
constexpr double kUpperB = 1.6044550222545184;   // B at xi = 2 pi/perimeter
constexpr double kMuLowerA1 = 1.48607163968037;  // Lambda/(1 + Lambda/2)
constexpr double kMuUpperA1 = 1.92772865431559;  // Lambda/(1 + 2)
constexpr double kRaulotThin = 3.17816850268179;
constexpr double kSyntheticA = 21.76363925317649;  // Lambda=7, q=1, area=pi
}  // namespace

TEST_CASE("mu bounds on the unit disk sandwich the analytic curve") {
  const MuBounds b1 = mu_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 1.0);
  CHECK(b1.lower == doctest::Approx(kMuLowerA1).epsilon(1e-12));
  CHECK(b1.upper == doctest::Approx(kMuUpperA1).epsilon(1e-12));
  CHECK(b1.lower < mu_disk(1.0));
  CHECK(mu_disk(1.0) < b1.upper);

  const MuBounds b4 = mu_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 4.0);
  CHECK(b4.lower == doctest::Approx(3.35666135739221).epsilon(1e-12));
  CHECK(b4.upper == doctest::Approx(3.85545730863119).epsilon(1e-12));
  CHECK(b4.lower < mu_disk(4.0));
  CHECK(mu_disk(4.0) < b4.upper);
}

TEST_CASE("mu bounds close onto Lambda as a grows") {
  const MuBounds b = mu_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 1e9);
  CHECK(b.lower == doctest::Approx(kLambdaDisk).epsilon(1e-6));
  CHECK(b.upper == doctest::Approx(kLambdaDisk).epsilon(1e-6));
  CHECK(b.lower < b.upper);
  CHECK_THROWS_AS(mu_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 0.0), std::invalid_argument);
}

TEST_CASE("b_function spot values on the unit disk") {
  CHECK(b_function(kLambdaDisk, 1.0, 0.0, kLambdaDisk / 4.0) ==
        doctest::Approx(kLowerB).epsilon(1e-12));
  CHECK(b_function(kLambdaDisk, 1.0, 0.0, kLambdaDisk / 4.0) ==
        doctest::Approx(1.36).epsilon(1e-3));
  CHECK(b_function(kLambdaDisk, 1.0, 0.0, 1.0) == doctest::Approx(kUpperB).epsilon(1e-12));
}

TEST_CASE("b_function limits and monotonicity") {
  for (double m : {0.0, 2.0}) {
    CHECK(b_function(kLambdaDisk, 1.0, m, 1e-12) ==
          doctest::Approx(std::sqrt(kLambdaDisk + m * m)).epsilon(1e-9));
    CHECK(std::abs(b_function(kLambdaDisk, 1.0, m, 1e12) - m) <= 1e-9);
    double prev = 1e300;
    for (double xi = 0.125; xi <= 64.0; xi *= 2.0) {
      const double b = b_function(kLambdaDisk, 1.0, m, xi);
      CHECK(b > 0.0);
      CHECK(b < prev);
      prev = b;
    }
  }
}

TEST_CASE("lambda bounds sandwich the disk eigenvalue") {
  const LambdaBounds b = lambda_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 0.0, 0.0);
  CHECK(b.lower == doctest::Approx(kLowerB).epsilon(1e-12));
  CHECK(b.upper == doctest::Approx(kUpperB).epsilon(1e-12));
  CHECK(b.lower < kRootJ0eqJ1);
  CHECK(kRootJ0eqJ1 < b.upper);
}

TEST_CASE("the lambda bounds are the translated mu bounds") {
  // B(xi) is defined so that the mu-bound value Lambda/(1 + 2 xi/a) at the
  // paired a = vartheta (B + m) equals B^2 - m^2 exactly
  for (double theta : {-0.9, 0.0, 0.8}) {
    const double vt = vartheta(theta);
    for (double m : {0.0, 1.5}) {
      for (double xi : {0.25, 1.0, kLambdaDisk / 4.0, 7.0}) {
        const double b = b_function(kLambdaDisk, vt, m, xi);
        const double a = vt * (b + m);
        CHECK(kLambdaDisk / (1.0 + 2.0 * xi / a) ==
              doctest::Approx(b * b - m * m).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("lambda bounds stay in the mass-shifted range") {
  const LambdaBounds b = lambda_bounds(kLambdaDisk, 2.0, 2.0 * M_PI, 0.0, 10.0);
  CHECK(b.lower > 10.0);
  CHECK(b.upper < std::sqrt(kLambdaDisk + 100.0));
  CHECK(b.lower < b.upper);
}

TEST_CASE("area-only lower bound and its symmetry") {
  CHECK(benguria_lower(M_PI, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(benguria_lower(M_PI, 0.0) == doctest::Approx(1.41).epsilon(5e-3));
  CHECK(benguria_lower(M_PI, 0.9) == doctest::Approx(benguria_lower(M_PI, -0.9)).epsilon(1e-14));
  CHECK_THROWS_AS(benguria_lower(M_PI, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(benguria_lower(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("the two lower bounds cross over in theta") {
  // at the symmetric point the area bound wins; off to the side the
  // geometric bound takes over
  CHECK(benguria_lower(M_PI, 0.0) > b_function(kLambdaDisk, vartheta(0.0), 0.0, kLambdaDisk / 4.0));
  bool geometric_wins_somewhere = false;
  for (double theta = -1.5; theta <= 1.5; theta += 0.05) {
    const double geo = b_function(kLambdaDisk, vartheta(theta), 0.0, kLambdaDisk / 4.0);
    if (geo > benguria_lower(M_PI, theta)) geometric_wins_somewhere = true;
  }
  CHECK(geometric_wins_somewhere);
}

TEST_CASE("inradius-curvature lower bound for q") {
  const RaulotBound disk = raulot_q_lower(1.0, 1.0);
  CHECK(disk.applicable);
  CHECK(disk.value == doctest::Approx(2.0).epsilon(1e-15));  // sharp on the disk

  const double rho = 1.0 / std::sqrt(10.0);
  const double kmin = std::pow(10.0, -1.5);
  const RaulotBound thin = raulot_q_lower(rho, kmin);
  CHECK(thin.applicable);
  CHECK(thin.value == doctest::Approx(kRaulotThin).epsilon(1e-12));
  CHECK(thin.value == doctest::Approx(3.178).epsilon(1e-3));

  CHECK_FALSE(raulot_q_lower(1.0, 2.0).applicable);
  CHECK_FALSE(raulot_q_lower(1.0, 3.0).applicable);
  CHECK_THROWS_AS(raulot_q_lower(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("all-parameter Faber-Krahn condition") {
  CHECK(fk_all_condition(M_PI, kRaulotThin));       // thin ellipse via its q bound
  CHECK(1.0 * kRaulotThin >= 2.89159298147339);
  CHECK_FALSE(fk_all_condition(M_PI, 2.0));         // disks never satisfy it
  for (double t : {0.5, 4.0}) {                     // scale invariance
    CHECK(fk_all_condition(t * t * M_PI, kRaulotThin / t) == fk_all_condition(M_PI, kRaulotThin));
    CHECK(fk_all_condition(t * t * M_PI, 2.0 / t) == fk_all_condition(M_PI, 2.0));
  }
}

TEST_CASE("restricted Faber-Krahn parameters on synthetic inputs") {
  const MuEvaluator disk_curve = [](double a) { return mu_disk(a); };
  const FkSomeParams p = fk_some_params(7.0, 1.0, M_PI, 0.0, disk_curve);
  CHECK(p.a_threshold == doctest::Approx(kSyntheticA).epsilon(1e-9));
  CHECK(p.a_threshold > 0.0);
  // the pairing argument exceeds one here, so the angle threshold is negative
  CHECK(p.theta_threshold < 0.0);
  CHECK(std::abs(p.theta_threshold) < M_PI / 2.0);
}

TEST_CASE("restricted parameters stay positive across admissible inputs") {
  const MuEvaluator disk_curve = [](double a) { return mu_disk(a); };
  for (double lambda : {6.5, 8.0, 12.0}) {
    for (double q : {0.5, 1.0, 2.0}) {
      if (fk_all_condition(M_PI, q)) continue;
      const FkSomeParams p = fk_some_params(lambda, q, M_PI, 1.0, disk_curve);
      CAPTURE(lambda);
      CAPTURE(q);
      CHECK(p.a_threshold > 0.0);
      CHECK(std::abs(p.theta_threshold) < M_PI / 2.0);
    }
  }
}

TEST_CASE("restricted parameters report their precondition failures distinctly") {
  const MuEvaluator disk_curve = [](double a) { return mu_disk(a); };
  CHECK_THROWS_AS(fk_some_params(7.0, 3.2, M_PI, 0.0, disk_curve), FkAllApplies);
  CHECK_THROWS_AS(fk_some_params(kLambdaDisk * 0.99, 1.0, M_PI, 0.0, disk_curve),
                  DirichletFkViolated);
}

TEST_CASE("condition implies the bound chain pointwise") {
  // same-area disk upper bound <= domain lower bound whenever the condition
  // holds; thin-ellipse-like synthetic inputs
  const double area = M_PI;
  const double q = kRaulotThin;
  const double lambda_omega = 24.0;  // any admissible Dirichlet value
  REQUIRE(fk_all_condition(area, q));
  const double disk_perimeter = 2.0 * M_PI;  // same-area disk is the unit disk
  for (double a = 0.0625; a <= 1024.0; a *= 2.0) {
    const double disk_upper = kLambdaDisk / (1.0 + 4.0 * M_PI / (disk_perimeter * a));
    const double omega_lower = lambda_omega / (1.0 + lambda_omega / (q * a));
    CHECK(disk_upper <= omega_lower * (1.0 + 1e-12));
  }
}

TEST_CASE("bound report serializes to a flat key-value block") {
  BoundReport r;
  r.domain_id = "disk(R=1)";
  r.theta = 0.0;
  r.mass = 0.0;
  r.lambda_dirichlet = kLambdaDisk;
  r.q = 2.0;
  r.q_source = QSource::raulot;
  r.lower_b = kLowerB;
  r.upper_b = kUpperB;
  r.benguria = std::sqrt(2.0);
  r.lambda = kRootJ0eqJ1;
  r.mu_rows.push_back({1.0, kMuLowerA1, 1.5769927308086080, kMuUpperA1});
  r.fk_all_flag = false;
  const std::string kv = r.to_kv();
  CHECK(kv.find("domain = disk(R=1)\n") != std::string::npos);
  CHECK(kv.find("q_source = raulot\n") != std::string::npos);
  CHECK(kv.find("lower_B = 1.36018167303674") != std::string::npos);
  CHECK(kv.find("benguria_C = 1.414213562373") != std::string::npos);
  CHECK(kv.find("fk_all = false\n") != std::string::npos);
  const std::string csv = r.to_csv();
  CHECK(csv.find("a,mu_lower,mu,mu_upper\n") == 0);
  CHECK(csv.find("1.00000000000000e+00,1.48607163968037") != std::string::npos);
}
