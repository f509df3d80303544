// Command-line driver for the verification suites: loads an experiment
// config, runs the selected suites and writes CSV reports and SVG plots.
// Exit codes: 0 all records passed, 1 failures, 2 configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sobscale/config.hpp"
#include "sobscale/csvfmt.hpp"
#include "sobscale/spectral_field.hpp"
#include "sobscale/suites.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
};

void attach_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
  cmd->add_option("--out", opts.out_dir, "output directory for reports/plots");
  cmd->add_option("--seed", opts.seed, "replace the config seed list by one seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--jobs", opts.jobs, "worker threads across suites");
}

sobscale::ExperimentConfig resolve_config(const CommonOpts& opts,
                                          const std::vector<std::string>& suites) {
  sobscale::ExperimentConfig cfg = opts.config_path.empty()
                                       ? sobscale::default_config()
                                       : sobscale::load_config_file(opts.config_path);
  if (!suites.empty()) cfg.suites = suites;
  if (opts.seed_set) cfg.seeds = {opts.seed};
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.jobs > 0) cfg.jobs = opts.jobs;
  return cfg;
}

int run_suites(const CommonOpts& opts, const std::vector<std::string>& suites) {
  sobscale::ExperimentConfig cfg;
  try {
    cfg = resolve_config(opts, suites);
  } catch (const sobscale::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const auto result = sobscale::run(cfg);
  sobscale::write_outputs(result, cfg, cfg.output_dir);
  for (const auto& s : result.suites) {
    std::cout << s.report.suite << ": " << s.report.records.size() << " records, "
              << s.report.failure_count() << " failures\n";
    for (const auto& r : s.report.records)
      if (!r.passed)
        std::cout << "  FAIL [" << r.claim << "] " << r.case_id << " " << r.metric
                  << "=" << sobscale::format_double(r.value) << " tol="
                  << sobscale::format_double(r.tolerance) << "\n";
  }
  std::cout << (result.all_passed() ? "all records passed" : "failures present")
            << "; reports in " << cfg.output_dir << "\n";
  return result.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"extended Sobolev scale toolkit: weighted norms, interpolation "
               "identities, quotient norms and model elliptic problems"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> report_suites;

  auto* ro = app.add_subcommand("ro", "weight membership and index suites");
  attach_common(ro, opts);
  auto* interp = app.add_subcommand("interp", "interpolation identity suite");
  attach_common(interp, opts);
  auto* quotient = app.add_subcommand("quotient", "quotient norm suite");
  attach_common(quotient, opts);
  auto* bvp = app.add_subcommand("bvp", "boundary-value model suite");
  attach_common(bvp, opts);
  auto* embed = app.add_subcommand("embed", "embedding and continuity suite");
  attach_common(embed, opts);
  auto* report = app.add_subcommand("report", "run the configured suites");
  attach_common(report, opts);
  report->add_option("--suite", report_suites, "restrict to the named suites");

  auto* norm = app.add_subcommand("norm", "weighted norm of a field CSV");
  std::string field_path, weight_json = R"({"family":"power","s":1})";
  norm->add_option("--field", field_path, "field CSV (k1,k2,re,im)")->required();
  norm->add_option("--weight", weight_json, "weight spec, e.g. {\"family\":\"power\",\"s\":1}");

  CLI11_PARSE(app, argc, argv);

  if (norm->parsed()) {
    try {
      std::ifstream in(field_path);
      if (!in) throw std::runtime_error("cannot open field file: " + field_path);
      const auto field = sobscale::read_field_csv(in);
      // reuse the config weight parser through a one-weight config
      std::ostringstream cfg_text;
      cfg_text << R"({"seeds":[1],"weights":[)" << weight_json << "]}";
      const auto cfg = sobscale::validate_config(cfg_text.str());
      std::cout << sobscale::format_double(sobscale::h_norm(field, cfg.weights.at(0)))
                << "\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  if (ro->parsed()) return run_suites(opts, {"membership", "indices"});
  if (interp->parsed()) return run_suites(opts, {"interp"});
  if (quotient->parsed()) return run_suites(opts, {"quotient"});
  if (bvp->parsed()) return run_suites(opts, {"bvp"});
  if (embed->parsed()) return run_suites(opts, {"embedding"});
  if (report->parsed()) return run_suites(opts, report_suites);
  return 2;
}
