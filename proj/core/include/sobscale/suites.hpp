#pragma once

#include <string>
#include <vector>

#include "sobscale/config.hpp"
#include "sobscale/report.hpp"
#include "sobscale/svg.hpp"

namespace sobscale {

struct SuiteResult {
  VerificationReport report;
  std::string plot_title, plot_x, plot_y;
  bool plot_log_y = false;
  std::vector<PlotSeries> plot;
};

SuiteResult run_membership_suite(const ExperimentConfig& cfg);
SuiteResult run_indices_suite(const ExperimentConfig& cfg);
SuiteResult run_interp_suite(const ExperimentConfig& cfg);
SuiteResult run_quotient_suite(const ExperimentConfig& cfg);
SuiteResult run_bvp_suite(const ExperimentConfig& cfg);
SuiteResult run_embedding_suite(const ExperimentConfig& cfg);

struct RunResult {
  std::vector<SuiteResult> suites;  // in canonical suite order
  bool all_passed() const;
  std::size_t failure_count() const;
};

/// Executes the suites selected in the config (in canonical order, optionally
/// across cfg.jobs worker threads; results are gathered by suite index so the
/// output is identical for any thread count).
RunResult run(const ExperimentConfig& cfg);

/// Writes <suite>.csv and <suite>.svg into out_dir (created if missing).
/// Files are written atomically (temp file + rename).
void write_outputs(const RunResult& result, const ExperimentConfig& cfg,
                   const std::string& out_dir);

} // namespace sobscale
