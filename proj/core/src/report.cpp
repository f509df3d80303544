#include "sobscale/report.hpp"

#include <ostream>
#include <sstream>

#include "sobscale/csvfmt.hpp"

namespace sobscale {

bool VerificationReport::all_passed() const {
  for (const auto& r : records)
    if (!r.passed) return false;
  return true;
}

std::size_t VerificationReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& r : records)
    if (!r.passed) ++n;
  return n;
}

void VerificationReport::add(std::string case_id, std::string claim, std::string metric,
                             double value, double tolerance, bool passed,
                             std::string provenance) {
  records.push_back(CaseRecord{suite, std::move(case_id), std::move(claim),
                               std::move(metric), value, tolerance, passed,
                               std::move(provenance)});
}

void VerificationReport::add_bounded(std::string case_id, std::string claim,
                                     std::string metric, double value, double tolerance,
                                     std::string provenance) {
  add(std::move(case_id), std::move(claim), std::move(metric), value, tolerance,
      value <= tolerance, std::move(provenance));
}

void VerificationReport::add_flag(std::string case_id, std::string claim, bool ok,
                                  std::string provenance) {
  add(std::move(case_id), std::move(claim), "flag", ok ? 1.0 : 0.0, 1.0, ok,
      std::move(provenance));
}

std::string environment_stamp() {
  std::ostringstream os;
#if defined(__clang__)
  os << "clang-" << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  os << "gcc-" << __GNUC__ << "." << __GNUC_MINOR__;
#else
  os << "cxx-unknown";
#endif
  os << ";cpp" << __cplusplus;
  return os.str();
}

std::string report_csv_body(const VerificationReport& report) {
  std::ostringstream os;
  os << "suite,case,claim,metric,value,tolerance,passed,provenance\n";
  for (const auto& r : report.records) {
    os << r.suite << "," << r.case_id << "," << r.claim << "," << r.metric << ","
       << format_double(r.value) << "," << format_double(r.tolerance) << ","
       << (r.passed ? 1 : 0) << "," << r.provenance << "\n";
  }
  return os.str();
}

void write_report_csv(const VerificationReport& report, std::ostream& os,
                      const std::string& timestamp) {
  os << "# suite=" << report.suite << "\n";
  os << "# config_digest=" << report.config_digest << "\n";
  os << "# environment=" << report.environment << "\n";
  os << "# timestamp=" << timestamp << "\n";
  os << report_csv_body(report);
}

} // namespace sobscale
