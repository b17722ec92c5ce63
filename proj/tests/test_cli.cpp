#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

// End-to-end checks of the command line tool: output formats, oracle
// agreement, exit codes, determinism.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(QDROBIN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) {
  return std::string(QDROBIN_SOURCE_DIR) + "/configs/" + name;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto pos = line.find(" = ");
    if (pos != std::string::npos) kv[line.substr(0, pos)] = line.substr(pos + 3);
  }
  return kv;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("domain-info reports the unit disk geometry") {
  const RunResult r = run("domain-info --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(std::abs(std::stod(kv.at("area")) - M_PI) <= 1e-10);
  CHECK(std::abs(std::stod(kv.at("perimeter")) - 2.0 * M_PI) <= 1e-10);
  CHECK(std::abs(std::stod(kv.at("inradius")) - 1.0) <= 1e-6);
  CHECK(std::abs(std::stod(kv.at("raulot_q_lower")) - 2.0) <= 1e-6);
}

TEST_CASE("domain-info reports the ellipse perimeter") {
  const RunResult r = run("domain-info --domain " + config("ellipse_2x1.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(std::abs(std::stod(kv.at("perimeter")) - 9.68844822054768) <= 1e-9);
}

TEST_CASE("domain-info with steklov flag includes the trace constant") {
  const RunResult r =
      run("domain-info --steklov --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(std::abs(std::stod(kv.at("steklov_q")) - 2.0) <= 1e-8);
}

TEST_CASE("invalid configs exit with code 2 and a diagnostic") {
  const RunResult bad = run("domain-info --domain " + config("disk_bad.json"));
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("config error") != std::string::npos);

  const RunResult missing = run("domain-info --domain /nonexistent/path.json");
  CHECK(missing.exit_code == 2);

  const RunResult no_domain = run("mu --a 1.0");
  CHECK(no_domain.exit_code == 2);
}

TEST_CASE("analytic backend is rejected off the disk") {
  const RunResult r =
      run("mu --backend analytic --a 1.0 --domain " + config("ellipse_2x1.json"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("a single value and a grid exclude each other") {
  const RunResult r =
      run("mu --a 1.0 --a-grid 1:2:3 --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("mu with the analytic backend matches the curve oracle") {
  const RunResult r =
      run("mu --a-grid 0.25:4:5 --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"a", "mu", "residual", "slope_origin",
                                            "monotone", "concave"});
  CHECK(std::abs(std::stod(rows[3][0]) - 1.0) <= 1e-12);  // geometric midpoint
  CHECK(std::abs(std::stod(rows[3][1]) - 1.5769927308086080) <= 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][4] == "1");
    CHECK(rows[i][5] == "1");
  }
}

TEST_CASE("mu with the FEM backend tracks the analytic curve to a percent") {
  const RunResult r = run("mu --backend fem --level 4 --a-grid 0.5,1,2 --domain " +
                          config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 4);
  const double oracle[] = {0.88504925015645, 1.5769927308086080, 2.55823776};
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(std::stod(rows[i + 1][1]) - oracle[i]) / oracle[i] <= 0.01);
}

TEST_CASE("identical configs produce byte-identical output") {
  const std::string cmd = "mu --a-grid 0.5:8:7 --domain " + config("disk_unit.json");
  const RunResult first = run(cmd);
  const RunResult second = run(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
}

TEST_CASE("lambda at the infinite-mass point prints the fixed point") {
  const RunResult r =
      run("lambda --theta 0 --m 0 --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(std::abs(std::stod(kv.at("lambda")) - 1.4346956508195632) <= 1e-8);
  CHECK(std::abs(std::stod(kv.at("a_star")) - std::stod(kv.at("lambda"))) <= 1e-10);
}

TEST_CASE("boundary angles at the closed endpoints are rejected") {
  const RunResult plus =
      run("lambda --theta 1.5707963267948966 --m 0 --domain " + config("disk_unit.json"));
  CHECK(plus.exit_code == 2);
  const RunResult minus =
      run("lambda --theta -1.5707963267948966 --m 0 --domain " + config("disk_unit.json"));
  CHECK(minus.exit_code == 2);
}

TEST_CASE("bounds emits a coherent report for the disk") {
  const RunResult r = run("bounds --theta 0 --m 0 --a-grid 1,4 --domain " +
                          config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  const double lower = std::stod(kv.at("lower_B"));
  const double upper = std::stod(kv.at("upper_B"));
  const double lambda = std::stod(kv.at("lambda"));
  CHECK(std::abs(lower - 1.3601816730367373) <= 1e-9);
  CHECK(std::abs(upper - 1.6044550222545184) <= 1e-9);
  CHECK(lower < lambda);
  CHECK(lambda < upper);
  CHECK(std::abs(std::stod(kv.at("benguria_C")) - std::sqrt(2.0)) <= 1e-10);
  CHECK(kv.at("fk_all") == "false");
  // the mu sandwich rows follow as a CSV section
  const auto csv_at = r.output.find("a,mu_lower,mu,mu_upper");
  REQUIRE(csv_at != std::string::npos);
  const auto rows = parse_csv(r.output.substr(csv_at));
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][1]) < std::stod(rows[i][2]));
    CHECK(std::stod(rows[i][2]) < std::stod(rows[i][3]));
  }
}

TEST_CASE("figure-bounds sweeps theta with the sandwich intact") {
  const RunResult r = run("figure-bounds --theta-grid -1:1:9 --m 0 --domain " +
                          config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"theta", "lambda", "lower_B", "upper_B",
                                            "benguria_C"});
  double prev_lambda = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double theta = std::stod(rows[i][0]);
    const double lambda = std::stod(rows[i][1]);
    const double lower = std::stod(rows[i][2]);
    const double upper = std::stod(rows[i][3]);
    CHECK(lower < lambda);
    CHECK(lambda < upper);
    CHECK(lambda < prev_lambda);
    prev_lambda = lambda;
    if (std::abs(theta) < 1e-12) {
      CHECK(lambda == doctest::Approx(1.43).epsilon(5e-3));
      CHECK(lower == doctest::Approx(1.36).epsilon(5e-3));
      CHECK(upper == doctest::Approx(1.60).epsilon(5e-3));
      CHECK(std::stod(rows[i][4]) == doctest::Approx(1.41).epsilon(5e-3));
    }
  }
}

TEST_CASE("figure-bounds runs the FEM-backed pipeline on the ellipse") {
  const RunResult r = run("figure-bounds --backend fem --level 3 --theta-grid -0.8:0.8:5 "
                          "--m 0 --domain " + config("ellipse_2x1.json"));
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 6);
  double prev_lambda = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double lambda = std::stod(rows[i][1]);
    CHECK(std::stod(rows[i][2]) < lambda);
    CHECK(lambda < std::stod(rows[i][3]));
    CHECK(lambda < prev_lambda);
    prev_lambda = lambda;
  }
  // the parallel dispatch must not perturb byte determinism
  const RunResult again = run("figure-bounds --backend fem --level 3 --theta-grid -0.8:0.8:5 "
                              "--m 0 --domain " + config("ellipse_2x1.json"));
  CHECK(again.output == r.output);
}

TEST_CASE("bounds on the star with the inradius q source") {
  const RunResult r = run("bounds --q-source raulot --level 3 --theta 0 --m 0 --domain " +
                          config("star_3lobe.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(kv.at("q_source") == "raulot");
  const double lambda = std::stod(kv.at("lambda"));
  CHECK(std::stod(kv.at("lower_B")) < lambda);
  CHECK(lambda < std::stod(kv.at("upper_B")));
}

TEST_CASE("non-positive tolerances are config errors") {
  const RunResult r =
      run("lambda --theta 0 --m 0 --tol -1 --domain " + config("disk_unit.json"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("fk-check on the thin ellipse confirms the disk comparison") {
  const RunResult r = run("fk-check --q-source raulot --level 4 --m 0 --a-grid 0.5:4:4 "
                          "--domain " + config("ellipse_thin.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(kv.at("fk_all") == "true");
  CHECK(std::abs(std::stod(kv.at("q")) - 3.17816850268179) <= 1e-6);
  const auto rows = parse_csv(r.output.substr(r.output.find("kind,")));
  bool saw_mu = false, saw_lambda = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double margin = std::stod(rows[i][4]);
    CHECK(margin > 0.0);
    CHECK(rows[i][5] == "omega_larger");
    if (rows[i][0] == "mu") saw_mu = true;
    if (rows[i][0] == "lambda") saw_lambda = true;
  }
  CHECK(saw_mu);
  CHECK(saw_lambda);
}

TEST_CASE("fk-check of a disk against itself degenerates to equality") {
  const RunResult r = run("fk-check --m 0 --a-grid 1,2 --domain " +
                          config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  const auto kv = parse_kv(r.output);
  CHECK(kv.at("degenerate_disk_comparison") == "true");
  CHECK(kv.at("fk_all") == "false");
  const auto rows = parse_csv(r.output.substr(r.output.find("kind,")));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::abs(std::stod(rows[i][4])) <= 1e-8);
    CHECK(rows[i][5] == "inconclusive");
  }
}

TEST_CASE("output lands in --out when given") {
  const std::string path = "/tmp/qdrobin_cli_out_test.csv";
  std::remove(path.c_str());
  const RunResult r = run("mu --a 1.0 --out " + path + " --domain " +
                          config("disk_unit.json"));
  CHECK(r.exit_code == 0);
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
}
