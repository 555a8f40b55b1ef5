#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qsat::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.raw_ = text;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::uint32_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty section name");
      }
      cfg.sections_[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": key outside any [section]");
    }
    if (cfg.sections_[section].count(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.sections_[section][key] = value;
    cfg.lines_[section][key] = line_no;
  }
  return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s != sections_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key,
                                  std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError(origin_ + ":" + std::to_string(lines_.at(section).at(key)) + ": [" + section +
                      "] " + key + " must be a non-negative integer, got '" + v + "'");
  }
  return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ":" + std::to_string(lines_.at(section).at(key)) + ": [" + section +
                      "] " + key + " must be a number, got '" + v + "'");
  }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(origin_ + ":" + std::to_string(lines_.at(section).at(key)) + ": [" + section +
                    "] " + key + " must be a boolean, got '" + v + "'");
}

std::vector<std::string> ConfigFile::get_list(const std::string& section,
                                              const std::string& key) const {
  std::vector<std::string> out;
  if (!has(section, key)) return out;
  std::istringstream ss(get(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<double> out;
  for (const std::string& s : get_list(section, key)) {
    try {
      out.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": [" + section + "] " + key + ": bad number '" + s + "'");
    }
  }
  return out;
}

std::vector<std::uint64_t> ConfigFile::get_u64_list(const std::string& section,
                                                    const std::string& key) const {
  std::vector<std::uint64_t> out;
  for (const std::string& s : get_list(section, key)) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      throw ConfigError(origin_ + ": [" + section + "] " + key + ": bad integer '" + s + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ConfigFile::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, keys] : sections_) {
    for (const auto& [key, value] : keys) out.emplace_back(section, key);
  }
  return out;
}

SweepConfig SweepConfig::parse(const ConfigFile& file) {
  static const std::set<std::pair<std::string, std::string>> known = {
      {"sweep", "version"},        {"sweep", "master_seed"},
      {"sweep", "jobs"},           {"sweep", "out_dir"},
      {"instances", "n"},          {"instances", "count"},
      {"instances", "target_ns"},  {"instances", "exhaustive_limit"},
      {"run", "strategies"},       {"run", "c_tot"},
      {"run", "theta0_frac"},      {"run", "sculpt_cycles"},
      {"run", "c_hold"},           {"run", "c_ramp"},
      {"run", "noise_cap"},        {"run", "noise_mode"},
      {"run", "record_traces"},    {"run", "fidelity_threshold"},
  };
  for (const auto& entry : file.entries()) {
    if (!known.count(entry)) {
      throw ConfigError(file.origin() + ": unknown key [" + entry.first + "] " + entry.second);
    }
  }

  SweepConfig cfg;
  cfg.version = file.get_u64("sweep", "version", 1);
  if (cfg.version != 1) {
    throw ConfigError(file.origin() + ": unsupported config format version " +
                      std::to_string(cfg.version) + " (this build reads version 1)");
  }
  cfg.master_seed = file.get_u64("sweep", "master_seed", 0);
  cfg.jobs = static_cast<std::uint32_t>(file.get_u64("sweep", "jobs", 1));
  cfg.out_dir = file.get_or("sweep", "out_dir", "sweep_out");

  for (std::uint64_t n : file.get_u64_list("instances", "n")) {
    cfg.sizes.push_back(static_cast<std::uint32_t>(n));
  }
  if (cfg.sizes.empty()) throw ConfigError(file.origin() + ": [instances] n must be non-empty");
  cfg.count = static_cast<std::uint32_t>(file.get_u64("instances", "count", 1));
  if (file.has("instances", "target_ns")) {
    cfg.target_ns = static_cast<std::int64_t>(file.get_u64("instances", "target_ns", 0));
  }
  cfg.exhaustive_limit =
      static_cast<std::uint32_t>(file.get_u64("instances", "exhaustive_limit", 30));

  cfg.strategies = file.get_list("run", "strategies");
  if (cfg.strategies.empty()) {
    throw ConfigError(file.origin() + ": [run] strategies must be non-empty");
  }
  for (const std::string& s : cfg.strategies) {
    if (s != "adiabatic-linear" && s != "adiabatic-sqrt" && s != "sculpt" && s != "hybrid") {
      throw ConfigError(file.origin() + ": unknown strategy '" + s + "'");
    }
  }
  cfg.c_tot = file.get_u64_list("run", "c_tot");
  cfg.theta0_frac = file.get_double_list("run", "theta0_frac");
  cfg.sculpt_cycles = file.get_u64("run", "sculpt_cycles", 0);
  cfg.c_hold = file.get_u64_list("run", "c_hold");
  cfg.c_ramp = file.get_u64_list("run", "c_ramp");
  cfg.noise_cap = file.get_double_list("run", "noise_cap");
  if (cfg.noise_cap.empty()) cfg.noise_cap.push_back(0.0);
  cfg.noise_mode = file.get_or("run", "noise_mode", "multiplicative");
  if (cfg.noise_mode != "multiplicative" && cfg.noise_mode != "additive") {
    throw ConfigError(file.origin() + ": [run] noise_mode must be multiplicative or additive");
  }
  cfg.record_traces = file.get_bool("run", "record_traces", false);
  cfg.fidelity_threshold = file.get_double("run", "fidelity_threshold", 0.999);
  return cfg;
}

std::vector<std::string> SweepConfig::resolved_lines() const {
  auto join_u = [](const auto& v) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
    return ss.str();
  };
  std::vector<std::string> out;
  out.push_back("sweep.version=" + std::to_string(version));
  out.push_back("sweep.master_seed=" + std::to_string(master_seed));
  out.push_back("sweep.jobs=" + std::to_string(jobs));
  out.push_back("sweep.out_dir=" + out_dir.string());
  out.push_back("instances.n=" + join_u(sizes));
  out.push_back("instances.count=" + std::to_string(count));
  out.push_back("instances.target_ns=" + std::to_string(target_ns));
  out.push_back("instances.exhaustive_limit=" + std::to_string(exhaustive_limit));
  std::string strat;
  for (std::size_t i = 0; i < strategies.size(); ++i) strat += (i ? "," : "") + strategies[i];
  out.push_back("run.strategies=" + strat);
  out.push_back("run.c_tot=" + join_u(c_tot));
  out.push_back("run.theta0_frac=" + join_u(theta0_frac));
  out.push_back("run.sculpt_cycles=" + std::to_string(sculpt_cycles));
  out.push_back("run.c_hold=" + join_u(c_hold));
  out.push_back("run.c_ramp=" + join_u(c_ramp));
  out.push_back("run.noise_cap=" + join_u(noise_cap));
  out.push_back("run.noise_mode=" + noise_mode);
  out.push_back(std::string("run.record_traces=") + (record_traces ? "true" : "false"));
  out.push_back("run.fidelity_threshold=" + std::to_string(fidelity_threshold));
  return out;
}

}  // namespace qsat::cli
