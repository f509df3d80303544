#include "sobscale/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sobscale/bvp_model.hpp"
#include "sobscale/csvfmt.hpp"

namespace sobscale {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

RoWeight parse_weight(const json& w) {
  if (!w.is_object() || !w.contains("family"))
    throw ConfigError("weight spec must be an object with a 'family' key");
  const std::string family = w.at("family").get<std::string>();
  if (family == "power") {
    check_keys(w, {"family", "s"}, "power weight");
    return RoWeight::power(w.at("s").get<double>());
  }
  if (family == "powerlog") {
    check_keys(w, {"family", "s", "r"}, "powerlog weight");
    return RoWeight::power_log(w.at("s").get<double>(), w.at("r").get<double>());
  }
  if (family == "oscpower") {
    check_keys(w, {"family", "s", "eps"}, "oscpower weight");
    return RoWeight::osc_power(w.at("s").get<double>(), w.at("eps").get<double>());
  }
  if (family == "represented") {
    check_keys(w, {"family", "log_t_max", "beta", "gamma"}, "represented weight");
    return RoWeight::represented(w.at("beta").get<std::vector<double>>(),
                                 w.at("gamma").get<std::vector<double>>(),
                                 w.at("log_t_max").get<double>());
  }
  throw ConfigError("unknown weight family '" + family + "'");
}

json weight_to_json(const RoWeight& w) {
  json j;
  switch (w.family()) {
    case WeightFamily::Power:
      j["family"] = "power";
      j["s"] = w.power_exponent();
      break;
    case WeightFamily::PowerLog:
      j["family"] = "powerlog";
      j["s"] = w.power_exponent();
      j["r"] = w.log_exponent();
      break;
    case WeightFamily::OscPower:
      j["family"] = "oscpower";
      j["s"] = w.power_exponent();
      j["eps"] = w.oscillation();
      break;
    case WeightFamily::Represented:
      j["family"] = "represented";
      j["note"] = w.describe();
      break;
  }
  return j;
}

} // namespace

double ExperimentConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it != tolerances.end()) return it->second;
  const auto& defaults = default_tolerances();
  const auto dit = defaults.find(name);
  if (dit == defaults.end())
    throw std::invalid_argument("unknown tolerance '" + name + "'");
  return dit->second;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites = {"membership", "indices", "interp",
                                                  "quotient",   "bvp",     "embedding"};
  return suites;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol = {
      {"interp_identity", 1e-12},    {"direct_sum", 1e-12},
      {"index_estimate", 0.05},      {"membership_margin", 1.0},
      {"quotient_agreement", 1e-8},  {"quotient_infimum", 1e-10},
      {"quotient_roundtrip", 1e-10}, {"green_identity", 1e-8},
      {"mode_residual", 1e-10},      {"defect_match", 1e-10},
      {"regularity_shift", 1e-12},   {"apriori_growth", 1.10},
      {"iso_stability", 1.25},       {"shift_identity", 1e-12},
  };
  return tol;
}

ExperimentConfig validate_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "config parse error at line " << line << ", column " << col << ": "
       << e.what();
    throw ConfigError(os.str());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");

  check_keys(root,
             {"seeds", "lattice_sizes", "weights", "models", "suites", "tolerances",
              "output_dir", "samples", "jobs"},
             "config root");

  ExperimentConfig cfg;

  if (!root.contains("seeds")) throw ConfigError("seeds required");
  cfg.seeds = root.at("seeds").get<std::vector<std::uint64_t>>();
  if (cfg.seeds.empty()) throw ConfigError("seeds required");

  cfg.lattice_sizes = root.value("lattice_sizes", std::vector<int>{8, 16, 32});
  for (int K : cfg.lattice_sizes)
    if (K < 1 || K > 256)
      throw ConfigError("lattice_sizes: cutoff " + format_int(K) +
                        " out of range [1, 256]");

  if (root.contains("weights")) {
    for (const auto& w : root.at("weights")) cfg.weights.push_back(parse_weight(w));
    if (cfg.weights.empty()) throw ConfigError("weights must be nonempty when given");
  } else {
    cfg.weights = {RoWeight::power(1.0), RoWeight::power_log(1.0, 1.0),
                   RoWeight::osc_power(1.0, 0.5)};
  }

  {
    std::vector<std::string> model_names;
    for (const auto& m : BvpModel::all_models()) model_names.push_back(m.name());
    cfg.models = root.value("models", model_names);
    for (const auto& name : cfg.models) {
      try {
        BvpModel::by_name(name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }

  cfg.suites = root.value("suites", known_suites());
  if (cfg.suites.empty()) throw ConfigError("suites must be nonempty");
  for (const auto& s : cfg.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) ==
        known_suites().end())
      throw ConfigError("unknown suite '" + s + "'");

  cfg.tolerances.clear();
  if (root.contains("tolerances")) {
    for (auto it = root.at("tolerances").begin(); it != root.at("tolerances").end();
         ++it) {
      if (default_tolerances().find(it.key()) == default_tolerances().end())
        throw ConfigError("unknown tolerance '" + it.key() + "'");
      const double v = it.value().get<double>();
      if (!(v > 0.0)) throw ConfigError("tolerance '" + it.key() + "' must be positive");
      cfg.tolerances[it.key()] = v;
    }
  }

  cfg.output_dir = root.value("output_dir", std::string("out"));

  if (root.contains("samples")) {
    const auto& s = root.at("samples");
    check_keys(s, {"apriori", "isomorphism", "quotient_instances"}, "samples");
    cfg.apriori_samples = s.value("apriori", cfg.apriori_samples);
    cfg.isomorphism_samples = s.value("isomorphism", cfg.isomorphism_samples);
    cfg.quotient_instances = s.value("quotient_instances", cfg.quotient_instances);
    if (cfg.apriori_samples < 1 || cfg.isomorphism_samples < 1 ||
        cfg.quotient_instances < 1)
      throw ConfigError("sample counts must be positive");
  }

  cfg.jobs = root.value("jobs", 1);
  if (cfg.jobs < 1 || cfg.jobs > 64) throw ConfigError("jobs out of range [1, 64]");

  // canonical form with defaults filled; nlohmann objects serialize with
  // sorted keys, so this is deterministic
  json normal;
  normal["seeds"] = cfg.seeds;
  normal["lattice_sizes"] = cfg.lattice_sizes;
  normal["weights"] = json::array();
  for (const auto& w : cfg.weights) normal["weights"].push_back(weight_to_json(w));
  normal["models"] = cfg.models;
  normal["suites"] = cfg.suites;
  json tol;
  for (const auto& [k, v] : default_tolerances()) tol[k] = cfg.tolerance(k);
  normal["tolerances"] = tol;
  normal["output_dir"] = cfg.output_dir;
  normal["samples"] = {{"apriori", cfg.apriori_samples},
                       {"isomorphism", cfg.isomorphism_samples},
                       {"quotient_instances", cfg.quotient_instances}};
  normal["jobs"] = cfg.jobs;
  cfg.normalized_json = normal.dump(2);
  cfg.digest = fnv1a_hex(cfg.normalized_json);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return validate_config(buffer.str());
}

ExperimentConfig default_config() {
  return validate_config(R"({"seeds": [1, 2, 3, 4, 5]})");
}

} // namespace sobscale
