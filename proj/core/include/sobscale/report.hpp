#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sobscale {

struct CaseRecord {
  std::string suite;
  std::string case_id;     // stable digest of the case inputs
  std::string claim;       // which mathematical claim the case exercises
  std::string metric;      // what was measured
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string provenance;  // "analytic", "oracle" or "stability"
};

struct VerificationReport {
  std::string suite;
  std::string config_digest;
  std::string environment;
  std::vector<CaseRecord> records;

  bool all_passed() const;
  std::size_t failure_count() const;

  void add(std::string case_id, std::string claim, std::string metric, double value,
           double tolerance, bool passed, std::string provenance);
  /// pass condition value <= tolerance
  void add_bounded(std::string case_id, std::string claim, std::string metric,
                   double value, double tolerance, std::string provenance);
  /// pass condition for boolean checks
  void add_flag(std::string case_id, std::string claim, bool ok, std::string provenance);
};

std::string environment_stamp();

/// Full CSV: '#' header lines (suite, config digest, environment, timestamp)
/// followed by the fixed column header and one row per record. Everything
/// after the '#' lines is byte-deterministic for a given report.
void write_report_csv(const VerificationReport& report, std::ostream& os,
                      const std::string& timestamp);

/// The deterministic part only (column header + rows).
std::string report_csv_body(const VerificationReport& report);

} // namespace sobscale
