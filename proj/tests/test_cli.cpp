#include "doctest.h"

#include "cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = lrl::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("spectrum prints the closed-form levels") {
  const Result r = run({"spectrum", "--d", "3", "--spin", "scalar", "--l", "0", "--nmax", "2"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"d", "spin", "l_or_j", "n", "N_or_k", "E_analytic", "E_numeric", "rel_dev"});
  CHECK(rows[1][5] == "-0.5");
  CHECK(rows[2][5] == "-0.125");
  CHECK(rows[3][5] == "-0.0555555555555556");
  CHECK(rows[3][4] == "3");
  CHECK(rows[1][6].empty());

  const Result h = run({"spectrum", "--d", "2", "--spin", "half", "--j", "1/2", "--nmax", "1", "--numeric"});
  REQUIRE(h.code == 0);
  const auto hr = csv_rows(h.out);
  REQUIRE(hr.size() == 3);
  CHECK(hr[1][5] == "-0.5");
  CHECK(hr[2][5] == "-0.125");
  for (int i = 1; i <= 2; ++i) CHECK(std::stod(hr[static_cast<std::size_t>(i)][7]) < 1e-6);
}

TEST_CASE("spectrum json carries exact energies and fails on a tight tolerance") {
  const Result r = run({"spectrum", "--d", "4", "--spin", "one", "--l", "1", "--nmax", "1", "--numeric", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema_version"] == "1.0.0");
  REQUIRE(doc["results"].size() == 2);
  CHECK(doc["results"][0]["level"]["principal"] == "5/3");
  CHECK(doc["results"][0]["values"]["E_analytic"] == "-9/50");
  CHECK(doc["results"][0]["values"]["rel_dev"].get<double>() < 1e-5);

  const Result t = run({"spectrum", "--d", "3", "--l", "0", "--nmax", "0", "--numeric", "--tol", "1e-300"});
  CHECK(t.code == 2);
}

TEST_CASE("repcheck") {
  const Result r = run({"repcheck", "--dmax", "8"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  std::map<int, int> dims;
  for (const auto& e : doc["results"]) {
    CHECK(e["status"] == "pass");
    if (e["rep"] == "gamma") dims[e["d"].get<int>()] = e["dimension"].get<int>();
  }
  for (int d = 2; d <= 8; ++d) CHECK(dims.at(d) == (1 << (d / 2)));
  CHECK(run({"repcheck", "--dmax", "0"}).code == 1);
  CHECK(run({"repcheck", "--format", "csv"}).code == 1);
}

TEST_CASE("verify passes for the models and reports a witness when tampered") {
  CHECK(run({"verify", "--d", "4", "--spin", "half"}).code == 0);
  const Result one = run({"verify", "--d", "3", "--spin", "one"});
  REQUIRE(one.code == 0);
  bool saw_spin1 = false;
  const json one_doc = json::parse(one.out);
  for (const auto& e : one_doc["results"])
    if (e["identity"] == "spin1_SS_pp") saw_spin1 = true;
  CHECK(saw_spin1);

  const Result bad = run({"verify", "--d", "3", "--spin", "scalar", "--tamper"});
  CHECK(bad.code == 2);
  bool witnessed = false;
  const json bad_doc = json::parse(bad.out);
  for (const auto& e : bad_doc["results"])
    if (e["status"] == "fail") {
      CHECK(e.contains("residual"));
      witnessed = witnessed || e.contains("witness");
    }
  CHECK(witnessed);
}

TEST_CASE("verify output is deterministic for a given seed") {
  const auto a = run({"verify", "--d", "3", "--spin", "half", "--seed", "7"});
  const auto b = run({"verify", "--d", "3", "--spin", "half", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("radial export") {
  const Result s = run({"radial", "--d", "3", "--spin", "scalar", "--l", "0", "--n", "1"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("# nodes=1\n") != std::string::npos);
  const auto rows = csv_rows(s.out);
  CHECK(rows[0] == std::vector<std::string>{"r", "chi"});
  int changes = 0;
  double prev = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][1]);
    if (std::abs(v) < 1e-12) continue;
    if (prev != 0 && (v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(changes == 1);

  const Result sp = run({"radial", "--d", "3", "--spin", "half", "--j", "1/2", "--n", "0"});
  REQUIRE(sp.code == 0);
  CHECK(csv_rows(sp.out)[0] == std::vector<std::string>{"r", "phi_up", "phi_down"});

  const Result v = run({"radial", "--d", "3", "--spin", "one", "--l", "1", "--n", "0"});
  REQUIRE(v.code == 0);
  const auto vr = csv_rows(v.out);
  CHECK(vr[0] == std::vector<std::string>{"r", "phi1", "phi2", "ac4_residual"});
  double worst = 0;
  for (std::size_t i = 1; i < vr.size(); ++i) worst = std::max(worst, std::stod(vr[i][3]));
  CHECK(worst < 1e-8);
}

TEST_CASE("radial grid failures are numerical errors") {
  const Result r = run({"radial", "--d", "3", "--n", "1", "--rmin", "0.1", "--rmax", "2", "--grid-points", "100"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical failure") != std::string::npos);
  CHECK(run({"radial", "--d", "3", "--rmin", "2", "--rmax", "1"}).code == 1);
}

TEST_CASE("forbidden channel") {
  const Result r = run({"forbidden", "--d", "4"});
  REQUIRE(r.code == 0);
  bool bound_checked = false;
  const json doc = json::parse(r.out);
  for (const auto& e : doc["results"])
    if (e["identity"] == "no_bound_state") bound_checked = e["status"] == "pass";
  CHECK(bound_checked);
  const Result s = run({"forbidden", "--d", "3"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["results"][0]["status"] == "skipped");
  const Result u = run({"forbidden", "--d", "2"});
  CHECK(u.code == 1);
  CHECK(u.err.find("d >= 4") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"spectrum", "--m", "1/0"}).code == 1);
  CHECK(run({"spectrum", "--alpha", "-1"}).code == 1);
  CHECK(run({"spectrum", "--spin", "one", "--l", "0"}).code == 1);
  CHECK(run({"spectrum", "--spin", "half", "--j", "1"}).code == 1);
  CHECK(run({"spectrum", "--spin", "one-extended"}).code == 1);
  CHECK(run({"eval-specfun", "--function", "k0", "--x", "-1"}).code == 1);
  CHECK(run({"eval-specfun", "--function", "kummer", "--n", "2", "--b", "-1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("eval-specfun") {
  const Result r = run({"eval-specfun", "--function", "kummer", "--n", "1", "--b", "2", "--x", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["results"][0]["values"]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-15));
  const Result k = run({"eval-specfun", "--function", "k1", "--x", "1"});
  CHECK(json::parse(k.out)["results"][0]["values"]["value"].get<double>() == doctest::Approx(0.601907230197235));
}

TEST_CASE("output file") {
  const std::string path = "test_cli_output.json";
  CHECK(run({"forbidden", "--d", "3", "-o", path}).code == 0);
  std::ifstream f(path);
  REQUIRE(f);
  const json doc = json::parse(f);
  CHECK(doc["config"]["subcommand"] == "forbidden");
  std::remove(path.c_str());
}
