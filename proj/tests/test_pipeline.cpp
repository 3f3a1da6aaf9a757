#include "doctest.h"
#include "support.hpp"
#include "trajnyq/pipeline.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace trajnyq;
using io::json;

namespace {

json disc_config(double delta) {
  json cfg = json::parse(R"({"omega": {"ball": {"center": [0, 0], "radius": 1}, "symmetric": true}})");
  cfg["set"] = {{"kind", "union_uniform_2d"},
                {"parts",
                 {{{"w", {0, 0}}, {"v", {1, 0}}, {"delta", delta}}, {{"w", {0.3, 0.1}}, {"v", {0, 1}}, {"delta", delta}}}}};
  return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_SUITE("pipeline") {
  const double crit = std::sqrt(2.0) * kPi;

  TEST_CASE("check exit codes") {
    const auto ok = execute("check", disc_config(0.99 * crit));
    CHECK(ok.exit_code == ExitCode::Ok);
    CHECK(ok.result["status"] == "Nyquist");
    CHECK(ok.artifacts.count("verdict.json") == 1);

    const auto over = execute("check", disc_config(1.01 * crit));
    CHECK(over.exit_code == ExitCode::NotNyquist);
    CHECK(over.result.contains("shift"));

    CHECK(execute("check", disc_config(crit)).exit_code == ExitCode::Marginal);

    auto circles = disc_config(1.0);
    circles["set"] = {{"kind", "circles"}, {"delta", 1.2 * kPi}};
    CHECK(execute("check", circles).exit_code == ExitCode::Marginal);
    circles["set"]["delta"] = 0.9 * kPi;
    CHECK(execute("check", circles).exit_code == ExitCode::Ok);
  }

  TEST_CASE("config errors") {
    CHECK(kind_of([] { execute("check", json::object()); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { execute("explode", disc_config(1.0)); }) == ErrorKind::ConfigError);
    auto cfg = disc_config(1.0);
    cfg["set"]["parts"][0]["delta"] = "wide";
    CHECK(kind_of([&] { execute("check", cfg); }) == ErrorKind::ConfigError);
    CHECK(exit_code_for(Error(ErrorKind::ConfigError, "x")) == ExitCode::ConfigError);
    CHECK(exit_code_for(Error(ErrorKind::ReconstructionImpossible, "x")) == ExitCode::NotNyquist);
  }

  TEST_CASE("report sweep flips next to the threshold") {
    auto cfg = disc_config(1.0);
    cfg["sweep"] = {{"from", 0.5 * crit}, {"to", 1.5 * crit}, {"steps", 101}};
    const auto r = execute("report", cfg);
    const auto rows = lines_of(r.artifacts.at("sweep.csv"));
    REQUIRE(rows.size() == 102);
    CHECK(rows[0] == "delta,verdict,density");
    int first_bad = -1;
    for (int k = 1; k < static_cast<int>(rows.size()); ++k) {
      if (rows[static_cast<std::size_t>(k)].find(",Nyquist,") == std::string::npos) {
        first_bad = k - 1;
        break;
      }
    }
    // Row 50 sits exactly on the threshold.
    CHECK(first_bad == 50);
    CHECK(std::stod(rows[1].substr(0, rows[1].find(','))) == doctest::Approx(0.5 * crit).epsilon(1e-15));
    CHECK(std::stod(rows[101].substr(0, rows[101].find(','))) == 1.5 * crit);
    REQUIRE(r.result["flips"].size() >= 1);
  }

  TEST_CASE("artifacts are reproducible") {
    auto cfg = disc_config(0.9 * crit);
    cfg["atoms"] = 10;
    cfg["window"] = {{"radius", 20}};
    cfg["probe_grid"] = 16;
    for (const char* action : {"sample", "reconstruct"}) {
      CAPTURE(action);
      const auto a = execute(action, cfg, 42);
      const auto b = execute(action, cfg, 42);
      CHECK(a.artifacts == b.artifacts);
      CHECK(a.result == b.result);
      const auto c = execute(action, cfg, 43);
      CHECK(a.artifacts.at("field.json") != c.artifacts.at("field.json"));
    }
    const auto rec = execute("reconstruct", cfg, 42);
    CHECK(rec.result["certified"] == true);
    CHECK(rec.result["relative_sup_error"].get<double>() < 1e-8);
  }

  TEST_CASE("emitted designs re-check as Nyquist") {
    struct Case {
      const char* omega;
      const char* mode;
      double eps;
    };
    const std::vector<Case> cases{
        {R"({"vertices": [[-1, 0], [1, 0], [0, 1]]})", "uniform_2d", 1e-3},
        {R"({"box": [2, 1]})", "uniform_2d", 1e-2},
        {R"({"ball": {"center": [0, 0, 0], "radius": 1}, "symmetric": true})", "hyperplanes", 1e-3},
        {R"({"ball": {"center": [0, 0, 0], "radius": 1}, "symmetric": true})", "uniform_d", 1e-2},
        {R"({"box": [1, 2, 3]})", "uniform_d", 1e-2},
    };
    for (const auto& c : cases) {
      CAPTURE(c.mode);
      json cfg{{"omega", json::parse(c.omega)}, {"mode", c.mode}, {"epsilon", c.eps}};
      const auto d = execute("design", cfg);
      REQUIRE(d.artifacts.count("set.json") == 1);
      json chk{{"omega", cfg["omega"]}, {"set", json::parse(d.artifacts.at("set.json"))}};
      const auto v = execute("check", chk);
      CHECK(v.result["status"] == "Nyquist");
    }
  }

  TEST_CASE("density with an empirical window") {
    auto cfg = disc_config(2.0);
    cfg["window"] = {{"radius", 80}};
    const auto r = execute("density", cfg);
    CHECK(r.result["density"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.result["empirical_density"].get<double>() == doctest::Approx(1.0).epsilon(0.05));
  }
}
