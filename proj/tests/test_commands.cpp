#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "archvar/calibration.hpp"
#include "archvar/commands.hpp"
#include "archvar/config.hpp"
#include "archvar/errors.hpp"
#include "archvar/sampler.hpp"
#include "archvar/var.hpp"
#include "oracles.hpp"

using namespace archvar;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("archvar_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Non-comment lines split on commas; the header is row 0.
std::vector<std::vector<std::string>> table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines_of(text)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

const std::string kData = ARCHVAR_TEST_DATA_DIR;

}  // namespace

TEST_CASE("calibrate") {
  Run r = run({"calibrate", "--family", "frank", "--tau", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("frank,0.5,5.73", 0) == 0);
  const auto cells = table(r.out).at(0);
  CHECK(std::fabs(std::stod(cells[2]) - 5.74) <= 0.01);

  r = run({"calibrate", "--family", "clayton", "--tau", "0.5"});
  CHECK(r.out == "clayton,0.5,2\n");
  r = run({"calibrate", "--family", "gumbel", "--tau", "0.5"});
  CHECK(r.out == "gumbel,0.5,2\n");
  r = run({"calibrate", "--family", "joe", "--theta", "2.4"});
  CHECK(r.code == 0);
  CHECK(std::stod(table(r.out).at(0)[1]) == kendall_tau(Family::Joe, 2.4));

  r = run({"calibrate", "--family", "gumbel", "--tau", "1.5"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("not attainable") != std::string::npos);
  CHECK(run({"calibrate", "--family", "nope", "--tau", "0.5"}).code == kExitConfig);
  CHECK(run({"calibrate", "--family", "frank"}).code == kExitConfig);
}

TEST_CASE("var report and exact round trip") {
  Run r = run({"var", "--family", "clayton", "--theta", "2", "--dim", "3",
               "--alpha", "0.05", "--no-timestamp"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.123961") != std::string::npos);
  CHECK(r.out.find("# generated=") == std::string::npos);
  CHECK(r.out.find("# family=clayton") != std::string::npos);

  r = run({"var", "--family", "frank", "--theta", "5.74", "--full-precision",
           "--no-timestamp"});
  REQUIRE(r.code == 0);
  const VarResult lib = var_closed_form({Family::Frank, 5.74, 3}, uniform_margins(3), 0.05);
  const auto rows = table(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"component", "margin", "var", "abs_error"});
  for (int i = 0; i < 3; ++i) {
    CHECK(std::stod(rows[i + 1][2]) == lib.components[i]);
    CHECK(std::stod(rows[i + 1][3]) == lib.abs_error_estimate[i]);
  }

  const Run with_time = run({"var", "--family", "joe", "--theta", "2.4"});
  CHECK(with_time.out.find("# generated=") != std::string::npos);
}

TEST_CASE("var to file prints a summary") {
  const fs::path out = scratch() / "var.csv";
  const Run r = run({"var", "--family", "gumbel", "--theta", "2", "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.251829") != std::string::npos);
  CHECK(lines_of(r.out).size() == 1);
  CHECK(slurp(out).find("0.251829") != std::string::npos);
}

TEST_CASE("AMH beyond two dimensions is rejected") {
  const Run r = run({"var", "--family", "amh", "--theta", "0.5", "--dim", "3"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("d must be 2") != std::string::npos);
}

TEST_CASE("config with target_tau and a tabulated margin") {
  const Run r = run({"var", "--config", kData + "/gumbel_tau.cfg", "--full-precision",
                     "--no-timestamp"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# theta=2\n") != std::string::npos);
  const auto rows = table(r.out);
  CHECK(rows[1][1] == "tabulated:uniform_0_2.csv");
  CHECK(std::fabs(std::stod(rows[1][2]) - 2.0 * oracle::kGumbel2) <= 1e-9);
  CHECK(rows[1][2] == rows[3][2]);

  // CLI flags override the file.
  const Run over = run({"var", "--config", kData + "/gumbel_tau.cfg", "--theta", "1",
                        "--dim", "2", "--no-timestamp"});
  REQUIRE(over.code == 0);
  CHECK(over.out.find("# theta=1\n") != std::string::npos);
}

TEST_CASE("config errors name the field") {
  const fs::path both = write_file("both.cfg",
                                   "[copula]\nfamily = clayton\ntheta = 2\ntarget_tau = 0.5\n");
  Run r = run({"var", "--config", both.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("exactly one of theta and target_tau") != std::string::npos);

  const fs::path bad_key = write_file("bad_key.cfg", "[var]\nalpah = 0.05\n");
  r = run({"var", "--config", bad_key.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("alpah") != std::string::npos);

  const fs::path bad_num = write_file("bad_num.cfg", "[copula]\nfamily = joe\ntheta = two\n");
  r = run({"var", "--config", bad_num.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("[copula] theta") != std::string::npos);

  const fs::path missing = write_file(
      "missing.cfg", "[copula]\nfamily = joe\ntheta = 2\n[var]\nmargins = tabulated:nope.csv\n");
  r = run({"var", "--config", missing.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("file not found") != std::string::npos);

  const fs::path wrong_count = write_file(
      "count.cfg", "[copula]\nfamily = joe\ntheta = 2\n[var]\nmargins = uniform, uniform\n");
  r = run({"var", "--config", wrong_count.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("[var] margins") != std::string::npos);

  r = run({"var", "--theta", "2"});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("family") != std::string::npos);

  CHECK(run({"var", "--family", "clayton", "--theta", "2", "--tau", "0.5"}).code ==
        kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"var", "--family", "clayton", "--theta", "2", "--alpha", "1.5"}).code ==
        kExitConfig);
}

TEST_CASE("numerical failure exits with 3") {
  const fs::path cfg = write_file(
      "tight.cfg",
      "[copula]\nfamily = clayton\ntheta = 5\nd = 5\n[var]\nalpha = 0.01\n"
      "abs_tol = 1e-16\nrel_tol = 1e-16\nmax_subdivisions = 1\n");
  const Run r = run({"var", "--config", cfg.string()});
  CHECK(r.code == kExitNumerical);
  CHECK(r.err.find("partial estimate") != std::string::npos);
}

TEST_CASE("sample is deterministic across runs and jobs") {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv", c = scratch() / "c.csv";
  const std::vector<std::string> base{"sample", "--family", "joe", "--theta", "2.4",
                                      "--n", "1000", "--seed", "42"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  REQUIRE(with({"--out", a.string()}).code == 0);
  REQUIRE(with({"--out", b.string()}).code == 0);
  REQUIRE(with({"--out", c.string(), "--jobs", "3"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK(table(slurp(a)).size() == 1001);

  CHECK(run({"sample", "--family", "joe", "--theta", "2.4", "--n", "0"}).code == kExitConfig);
}

TEST_CASE("sampled file reproduces Kendall tau") {
  const fs::path p = scratch() / "clayton.csv";
  REQUIRE(run({"sample", "--family", "clayton", "--theta", "2", "--dim", "3", "--n",
               "100000", "--seed", "7", "--out", p.string()})
              .code == 0);
  const auto rows = table(slurp(p));
  REQUIRE(rows.size() == 100001);
  std::vector<double> x, y;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    x.push_back(std::stod(rows[k][0]));
    y.push_back(std::stod(rows[k][2]));
  }
  CHECK(std::fabs(empirical_kendall_tau(x, y) - 0.5) <= 0.01);
  // 17 significant digits round-trip the stored doubles.
  const Sample s = sample_copula({Family::Clayton, 2.0, 3}, 100000, Seed{7, 0});
  CHECK(x[123] == s.at(123, 0));
}

TEST_CASE("mc and table1 reports") {
  Run r = run({"mc", "--family", "clayton", "--theta", "2", "--n", "2000,4000", "--M",
               "1", "--h", "0.01", "--no-timestamp", "--seed", "3"});
  REQUIRE(r.code == 0);
  auto rows = table(r.out);
  REQUIRE(rows.size() == 1 + 2 * 3);
  CHECK(rows[0][0] == "n");
  CHECK(rows[1][0] == "2000");
  CHECK(rows[4][0] == "4000");
  CHECK(rows[1][3] == "0.000000");  // SD with one replication

  const Run again = run({"mc", "--family", "clayton", "--theta", "2", "--n", "2000,4000",
                         "--M", "4", "--h", "0.01", "--no-timestamp", "--seed", "3"});
  const Run parallel = run({"mc", "--family", "clayton", "--theta", "2", "--n",
                            "2000,4000", "--M", "4", "--h", "0.01", "--no-timestamp",
                            "--seed", "3", "--jobs", "3"});
  CHECK(again.out == parallel.out);

  r = run({"mc", "--family", "clayton", "--theta", "2", "--n", "10", "--M", "2", "--h",
           "1e-12"});
  CHECK(r.code == kExitStatistical);

  r = run({"table1", "--n", "3000", "--M", "1", "--h", "0.01", "--no-timestamp"});
  REQUIRE(r.code == 0);
  rows = table(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"n", "copula", "mean", "std_dev", "bias",
                                            "rmse", "theoretical", "std_error",
                                            "mean_selected", "failed_replications"});
  const std::vector<std::string> theo{"0.123961", "0.237818", "0.251829", "0.317353"};
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[i + 1][6] == theo[i]);
    CHECK(rows[i + 1][3] == "0.000000");
  }
  CHECK(r.out.find("# joe_note=inconsistent") != std::string::npos);
  CHECK(r.out.find("# joe_kendall_tau_at_theta_2.4=0.432431") != std::string::npos);
  CHECK(r.out.find("# M=1") != std::string::npos);
}

TEST_CASE("config parser details") {
  std::istringstream in(
      "# comment\n; also comment\n[mc]\nn = 5e4, 100000\nM = 7\nseed = 18446744073709551615\n"
      "[table1]\nfamilies = clayton:2, joe:2.4\n");
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.mc_n == std::vector<std::size_t>{50000, 100000});
  CHECK(cfg.replications == 7);
  CHECK(cfg.seed.value == 18446744073709551615ull);
  REQUIRE(cfg.table1_families.size() == 2);
  CHECK(cfg.table1_families[1].first == Family::Joe);
  CHECK(cfg.table1_families[1].second == 2.4);

  std::istringstream orphan("family = clayton\n");
  CHECK_THROWS_AS(parse_config(orphan), ConfigError);
  std::istringstream bad_list("[mc]\nn = 1.5\n");
  CHECK_THROWS_AS(parse_config(bad_list), ConfigError);

  const QuantileFn q = load_tabulated_margin(kData + "/uniform_0_2.csv");
  CHECK(q(0.25) == 0.5);
  CHECK(q(0.75) == 1.5);
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("table1") != std::string::npos);
}
