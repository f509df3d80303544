#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sobscale/ro_weight.hpp"

namespace sobscale {

/// Configuration problems carry line/column diagnostics where available.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<RoWeight> weights;
  std::vector<int> lattice_sizes;
  std::vector<std::string> models;
  std::vector<std::string> suites;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  int apriori_samples = 40;
  int isomorphism_samples = 40;
  int quotient_instances = 20;
  int jobs = 1;

  std::string digest;           // FNV-1a of the normalized form
  std::string normalized_json;  // canonical serialization with defaults filled

  double tolerance(const std::string& name) const;
};

/// Known suite names in canonical execution order.
const std::vector<std::string>& known_suites();

/// Default tolerances; every record in a report cites one of these (or its
/// config override).
const std::map<std::string, double>& default_tolerances();

/// Parse + validate a JSON config text: schema check, unknown-key detection,
/// defaults, canonical re-serialization and digest. Throws ConfigError with
/// line diagnostics on parse errors and with the offending key/value
/// otherwise.
ExperimentConfig validate_config(const std::string& json_text);

ExperimentConfig load_config_file(const std::string& path);

/// The built-in experiment matrix used when no config file is given.
ExperimentConfig default_config();

} // namespace sobscale
