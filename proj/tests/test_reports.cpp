#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sobscale/config.hpp"
#include "sobscale/report.hpp"
#include "sobscale/suites.hpp"
#include "sobscale/svg.hpp"

using namespace sobscale;

TEST_CASE("config validation diagnoses the classic mistakes") {
  CHECK_THROWS_WITH_AS(validate_config(R"({})"), "seeds required", ConfigError);
  CHECK_THROWS_WITH_AS(validate_config(R"({"seeds": []})"), "seeds required",
                       ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "lattice_sizes": [0]})"),
                  ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "suites": []})"), ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "suites": ["nope"]})"), ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "typo_key": 1})"), ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "tolerances": {"nope": 1.0}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      validate_config(R"({"seeds": [1], "tolerances": {"interp_identity": -1.0}})"),
      ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "models": ["square-peg"]})"),
                  ConfigError);
  CHECK_THROWS_AS(validate_config(R"({"seeds": [1], "jobs": 0})"), ConfigError);
}

TEST_CASE("parse errors carry line positions") {
  try {
    validate_config("{\n  \"seeds\": [1,,2]\n}");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("unknown weight families are rejected") {
  CHECK_THROWS_AS(
      validate_config(R"({"seeds": [1], "weights": [{"family": "mystery"}]})"),
      ConfigError);
  CHECK_THROWS_AS(
      validate_config(R"({"seeds": [1], "weights": [{"family": "power", "s": 1, "x": 2}]})"),
      ConfigError);
}

TEST_CASE("normalization fills defaults and is reproducible") {
  const auto a = validate_config(R"({"seeds": [1], "suites": ["interp"]})");
  const auto b = validate_config(R"({"suites": ["interp"], "seeds": [1]})");
  CHECK(a.normalized_json == b.normalized_json);
  CHECK(a.digest == b.digest);
  CHECK(a.lattice_sizes == std::vector<int>{8, 16, 32});
  CHECK(a.weights.size() == 3);
  CHECK(a.tolerance("interp_identity") == 1e-12);

  const auto c = validate_config(R"({"seeds": [2], "suites": ["interp"]})");
  CHECK(c.digest != a.digest);
}

TEST_CASE("golden normalized form of the minimal config") {
  const auto cfg = validate_config(R"({"seeds": [1], "suites": ["interp"]})");
  std::istringstream lines(cfg.normalized_json);
  std::string first;
  std::getline(lines, first);
  CHECK(first == "{");
  CHECK(cfg.normalized_json.find("\"suites\": [\n    \"interp\"\n  ]") !=
        std::string::npos);
  CHECK(cfg.normalized_json.find("\"jobs\": 1") != std::string::npos);
  CHECK(cfg.normalized_json.find("\"oscpower\"") != std::string::npos);
}

TEST_CASE("tolerance overrides are honored") {
  const auto cfg = validate_config(
      R"({"seeds": [1], "tolerances": {"interp_identity": 1e-10}})");
  CHECK(cfg.tolerance("interp_identity") == 1e-10);
  CHECK(cfg.tolerance("green_identity") == 1e-8);
}

TEST_CASE("report bodies are deterministic across runs and thread counts") {
  const char* text =
      R"({"seeds": [1], "lattice_sizes": [4, 8], "suites": ["interp", "quotient"],
          "samples": {"quotient_instances": 4}})";
  auto cfg = validate_config(text);
  const auto first = run(cfg);
  const auto second = run(cfg);
  REQUIRE(first.suites.size() == second.suites.size());
  for (std::size_t i = 0; i < first.suites.size(); ++i)
    CHECK(report_csv_body(first.suites[i].report) ==
          report_csv_body(second.suites[i].report));

  cfg.jobs = 2;
  const auto threaded = run(cfg);
  for (std::size_t i = 0; i < first.suites.size(); ++i)
    CHECK(report_csv_body(first.suites[i].report) ==
          report_csv_body(threaded.suites[i].report));
}

TEST_CASE("csv schema is frozen") {
  VerificationReport report;
  report.suite = "demo";
  report.add_bounded("case-a", "claim-x", "rel_err", 1e-13, 1e-12, "analytic");
  const std::string body = report_csv_body(report);
  CHECK(body.rfind("suite,case,claim,metric,value,tolerance,passed,provenance\n", 0) ==
        0);
  CHECK(body.find("demo,case-a,claim-x,rel_err,1e-13,1e-12,1,analytic") !=
        std::string::npos);

  std::ostringstream full;
  write_report_csv(report, full, "2000-01-01T00:00:00Z");
  CHECK(full.str().find("# suite=demo") != std::string::npos);
  CHECK(full.str().find("# timestamp=2000-01-01T00:00:00Z") != std::string::npos);
}

TEST_CASE("failing records keep the claim tag") {
  VerificationReport report;
  report.suite = "demo";
  report.add_bounded("case-b", "apriori-stability", "growth", 2.0, 1.1, "stability");
  CHECK_FALSE(report.all_passed());
  CHECK(report.records[0].claim == "apriori-stability");
  CHECK(report.failure_count() == 1);
}

TEST_CASE("outputs land as csv and svg files") {
  namespace fs = std::filesystem;
  const auto cfg = validate_config(
      R"({"seeds": [1], "lattice_sizes": [4], "suites": ["indices"],
          "output_dir": "unused"})");
  const auto result = run(cfg);
  const fs::path dir = fs::temp_directory_path() / "sobscale_test_out";
  fs::remove_all(dir);
  write_outputs(result, cfg, dir.string());
  CHECK(fs::exists(dir / "indices.csv"));
  {
    std::ifstream in(dir / "indices.csv");
    std::string first;
    std::getline(in, first);
    CHECK(first == "# suite=indices");
  }
  CHECK(fs::exists(dir / "indices.svg"));
  {
    std::ifstream in(dir / "indices.svg");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("<svg") != std::string::npos);
    CHECK(buf.str().find("polyline") != std::string::npos);
  }
  fs::remove_all(dir);
}

TEST_CASE("svg plots render degenerate inputs without dividing by zero") {
  std::ostringstream os;
  PlotSeries flat{"flat", {{1.0, 2.0}, {2.0, 2.0}}};
  write_svg_plot(os, "t", "x", "y", {flat}, false);
  CHECK(os.str().find("NaN") == std::string::npos);
  CHECK(os.str().find("nan") == std::string::npos);
}
