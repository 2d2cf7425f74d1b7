#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const spn::testing::TempDir& dir, const std::string& args) {
  const std::string out = dir.file("stdout.txt");
  const std::string err = dir.file("stderr.txt");
  const std::string cmd = std::string("'") + SPN_CLI + "' " + args + " >'" + out + "' 2>'" + err + "'";
  const int raw = std::system(cmd.c_str());
  Result r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

// The single machine-readable error line on stderr.
json error_line(const Result& r) {
  const auto nl = r.err.find('\n');
  REQUIRE(nl != std::string::npos);
  CHECK(nl + 1 == r.err.size());
  return json::parse(r.err.substr(0, nl));
}

std::vector<std::vector<std::string>> csv_cells(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const char* kTinyConfig = R"({"ga": {"generations": 2, "population": 10, "elite_candidates": 3,
  "elite_episodes": 2, "sigma": 0.5}, "hidden": 8, "runs": 2})";

}  // namespace

TEST_CASE("cli: usage errors exit 2 with a JSON error line") {
  spn::testing::TempDir dir;
  for (const std::string& args : {std::string(""), std::string("frobnicate"),
                                 std::string("eval"), std::string("plot --csv x.csv"),
                                 std::string("energy-report"),
                                 std::string("energy-report --manual --task a --shape 1,2 "
                                             "--rate 1 --generations 3")}) {
    CAPTURE(args);
    const auto r = run(dir, args);
    CHECK(r.status == 2);
    const json e = error_line(r);
    CHECK(e["error"] == "usage");
    CHECK(e["message"].is_string());
  }
}

TEST_CASE("cli: eval with zero episodes is a usage error") {
  spn::testing::TempDir dir;
  const auto r = run(dir, "eval --ckpt nowhere.json --episodes 0");
  CHECK(r.status == 2);
  CHECK(error_line(r)["error"] == "usage");
}

TEST_CASE("cli: runtime errors exit 1") {
  spn::testing::TempDir dir;
  auto r = run(dir, "eval --ckpt '" + dir.file("missing.json") + "'");
  CHECK(r.status == 1);
  CHECK(error_line(r)["error"] == "io");

  std::ofstream(dir.file("bad.json")) << R"({"ga": {"population": 3}})";
  r = run(dir, "evolve --config '" + dir.file("bad.json") + "' --out '" + dir.file("x") + "'");
  CHECK(r.status == 1);
  CHECK(error_line(r)["error"] == "config");

  std::ofstream(dir.file("empty.csv")) << "";
  r = run(dir, "plot --csv '" + dir.file("empty.csv") + "' --out '" + dir.file("o.svg") + "'");
  CHECK(r.status == 1);
  CHECK(error_line(r)["error"] == "config");
}

TEST_CASE("cli: evolve is reproducible and its outputs feed eval, plot and energy-report") {
  spn::testing::TempDir dir;
  std::ofstream(dir.file("cfg.json")) << kTinyConfig;
  const std::string base = "evolve --config '" + dir.file("cfg.json") + "' --seed 3 ";
  auto a = run(dir, base + "--workers 1 --out '" + dir.file("a") + "'");
  REQUIRE(a.status == 0);
  auto b = run(dir, base + "--workers 4 --out '" + dir.file("b") + "'");
  REQUIRE(b.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("elite_mean") != std::string::npos);
  const std::string csv = slurp(dir.file("a/generations.csv"));
  CHECK(csv == slurp(dir.file("b/generations.csv")));
  CHECK(csv_cells(csv).size() == 1 + 2 * 2);

  auto e = run(dir, "eval --ckpt '" + dir.file("a/run_01/elite_gen_001.json") + "' --episodes 4");
  REQUIRE(e.status == 0);
  const json rep = json::parse(e.out);
  CHECK(rep["episodes"] == 4);
  CHECK(rep["returns"].size() == 4);

  auto p = run(dir, "plot --csv '" + dir.file("a/generations.csv") + "' --out '" +
                        dir.file("curves.svg") + "'");
  REQUIRE(p.status == 0);
  CHECK(slurp(dir.file("curves.svg")).find("<svg xmlns") != std::string::npos);

  auto en = run(dir, "energy-report --run-dir '" + dir.file("a") + "'");
  REQUIRE(en.status == 0);
  const auto cells = csv_cells(en.out);
  REQUIRE(cells.size() == 2);
  CHECK(cells[1][0] == "cartpole");
}

TEST_CASE("cli: published energy report") {
  spn::testing::TempDir dir;
  const auto r = run(dir, "energy-report --published");
  REQUIRE(r.status == 0);
  const auto cells = csv_cells(r.out);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0][3] == "infer_ratio");
  const double infer[] = {1.3, 1.2, 1.1};
  const double optim[] = {6.5, 21.9, 87.9};
  const double gamma[] = {18.3, 5.4, 1.2};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::round(std::stod(cells[i + 1][3]) * 10.0) / 10.0 == infer[i]);
    CHECK(std::stod(cells[i + 1][6]) == doctest::Approx(optim[i]).epsilon(0.01));
    CHECK(std::stod(cells[i + 1][7]) == doctest::Approx(gamma[i]).epsilon(1e-9));
  }
}

TEST_CASE("cli: manual energy report") {
  spn::testing::TempDir dir;
  const auto r = run(dir,
                     "energy-report --manual --task A --shape 17,64,6 --spn-energy 5200 "
                     "--generations 61 --task B --shape 8,64,2 --spn-energy 2410 "
                     "--generations 18");
  REQUIRE(r.status == 0);
  const auto cells = csv_cells(r.out);
  REQUIRE(cells.size() == 3);
  CHECK(cells[1][0] == "A");
  CHECK(std::stod(cells[1][6]) == doctest::Approx(6.469).epsilon(0.001));
  CHECK(std::stod(cells[2][7]) == doctest::Approx(5.4));

  const auto rate = run(dir,
                        "energy-report --manual --task C --shape 17,64,6 --rate 1 "
                        "--generations 1 --population 20 --episode-length 10");
  REQUIRE(rate.status == 0);
  const auto rc = csv_cells(rate.out);
  CHECK(std::stod(rc[1][2]) == doctest::Approx(5350.4));
  CHECK(std::stod(rc[1][7]) == doctest::Approx((20 * 10 + 100 * 10) / 1e6));
}
