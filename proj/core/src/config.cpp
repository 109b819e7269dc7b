#include "vortex/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace vortex {

namespace {

using nlohmann::json;

constexpr double kPi = 3.1415926535897932384626433832795;

// 1-based line of the first occurrence of "key" in the file text; falls back
// to line 1 so every error message stays anchored.
int line_of(const std::string& text, const std::string& key) {
  const std::string needle = "\"" + key + "\"";
  const std::size_t pos = text.find(needle);
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

int line_of_offset(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

[[noreturn]] void fail(const std::string& path, const std::string& text,
                       const std::string& key, const std::string& msg) {
  std::ostringstream os;
  os << path << ":" << line_of(text, key) << ": config error: " << msg;
  throw ConfigError(os.str());
}

// Typed extraction with line-anchored complaints.
struct Extractor {
  const json& j;
  const std::string& path;
  const std::string& text;

  double number(const std::string& key, double def) const {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number()) fail(path, text, key, "'" + key + "' must be a number");
    return j.at(key).get<double>();
  }
  int integer(const std::string& key, int def) const {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number_integer())
      fail(path, text, key, "'" + key + "' must be an integer");
    return j.at(key).get<int>();
  }
  bool boolean(const std::string& key, bool def) const {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_boolean()) fail(path, text, key, "'" + key + "' must be a boolean");
    return j.at(key).get<bool>();
  }
  std::uint64_t unsigned64(const std::string& key, std::uint64_t def) const {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number_unsigned() && !j.at(key).is_number_integer())
      fail(path, text, key, "'" + key + "' must be a nonnegative integer");
    if (j.at(key).is_number_integer() && j.at(key).get<long long>() < 0)
      fail(path, text, key, "'" + key + "' must be a nonnegative integer");
    return j.at(key).get<std::uint64_t>();
  }
  std::string str(const std::string& key, const std::string& def) const {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_string()) fail(path, text, key, "'" + key + "' must be a string");
    return j.at(key).get<std::string>();
  }
};

const std::set<std::string>& known_checks() {
  static const std::set<std::string> k = {"length_identity", "sup_bound",
                                          "pointwise_estimate", "zeros_census"};
  return k;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

RunConfig parse_run_config_text(const std::string& text, const std::string& command,
                                const std::string& path) {
  static const std::set<std::string> commands = {"solve", "verify", "index", "sweep",
                                                 "topology"};
  if (!commands.count(command)) {
    throw ConfigError("unknown command '" + command + "'");
  }

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << path << ":" << line_of_offset(text, e.byte) << ": config error: malformed JSON";
    throw ConfigError(os.str());
  }
  if (!j.is_object()) {
    throw ConfigError(path + ":1: config error: top level must be a JSON object");
  }

  std::set<std::string> allowed = {"d",          "tau",       "vol",       "vol_over_pi",
                                   "n",          "seed",      "rtol",      "max_iter",
                                   "picard_target", "divisor", "randomize", "out_dir",
                                   "jobs",       "lambda0",   "cg_tol",    "cg_maxit",
                                   "flow_steps"};
  if (command == "verify") {
    allowed.insert({"checks", "tolerances"});
  } else if (command == "index") {
    allowed.insert({"degrees", "ns"});
  } else if (command == "sweep") {
    allowed.insert({"tau_schedule", "sweep_degrees", "sweep_vols_over_pi"});
  } else if (command == "topology") {
    allowed.insert({"k_max", "table_degrees"});
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail(path, text, it.key(),
           "unknown key '" + it.key() + "' for command '" + command + "'");
    }
  }

  Extractor x{j, path, text};
  RunConfig rc;
  rc.command = command;
  rc.config_hash = fnv1a(text);

  rc.solve.d = x.integer("d", rc.solve.d);
  rc.solve.tau = x.number("tau", rc.solve.tau);
  rc.solve.n = x.integer("n", rc.solve.n);
  // verify drives its checks at their own declared tolerances; the underlying
  // solve only needs to be comfortably below them.
  rc.solve.rtol = x.number("rtol", command == "verify" ? 1e-6 : rc.solve.rtol);
  rc.solve.max_iter = x.integer("max_iter", rc.solve.max_iter);
  rc.solve.lambda0 = x.number("lambda0", rc.solve.lambda0);
  rc.solve.cg_tol = x.number("cg_tol", rc.solve.cg_tol);
  rc.solve.cg_maxit = x.integer("cg_maxit", rc.solve.cg_maxit);
  rc.solve.flow_steps = x.integer("flow_steps", rc.solve.flow_steps);
  rc.solve.rng_seed = x.unsigned64("seed", rc.solve.rng_seed);
  rc.solve.randomize = x.boolean("randomize", rc.solve.randomize);
  rc.out_dir = x.str("out_dir", rc.out_dir);
  rc.jobs = x.integer("jobs", rc.jobs);

  if (j.contains("vol") && j.contains("vol_over_pi")) {
    fail(path, text, "vol_over_pi", "specify either 'vol' or 'vol_over_pi', not both");
  }
  if (j.contains("vol_over_pi")) {
    const double v = x.number("vol_over_pi", 0.0);
    if (v <= 0.0) fail(path, text, "vol_over_pi", "'vol_over_pi' must be positive");
    rc.vol_over_pi = v;
    rc.solve.vol = kPi * v;
  } else {
    rc.solve.vol = x.number("vol", rc.solve.vol);
  }

  if (j.contains("picard_target")) {
    const auto& t = j.at("picard_target");
    if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number()) {
      fail(path, text, "picard_target",
           "'picard_target' must be an array of two numbers");
    }
    rc.solve.picard_target = {t[0].get<double>(), t[1].get<double>()};
  }

  if (j.contains("divisor")) {
    const auto& dv = j.at("divisor");
    if (!dv.is_array()) fail(path, text, "divisor", "'divisor' must be an array");
    Divisor div;
    for (const auto& p : dv) {
      DivisorPoint pt;
      if (p.is_array() && (p.size() == 2 || p.size() == 3) && p[0].is_number() &&
          p[1].is_number()) {
        pt.x = p[0].get<double>();
        pt.y = p[1].get<double>();
        pt.multiplicity = p.size() == 3 ? p[2].get<int>() : 1;
      } else if (p.is_object()) {
        if (!p.contains("x") || !p.contains("y")) {
          fail(path, text, "divisor", "divisor points need 'x' and 'y'");
        }
        pt.x = p.at("x").get<double>();
        pt.y = p.at("y").get<double>();
        pt.multiplicity = p.value("multiplicity", 1);
      } else {
        fail(path, text, "divisor",
             "divisor points must be [x, y], [x, y, mult], or objects");
      }
      if (pt.multiplicity < 1) {
        fail(path, text, "divisor", "divisor multiplicities must be >= 1");
      }
      div.push_back(pt);
    }
    rc.solve.divisor = div;
  }

  if (command == "verify") {
    rc.checks = {"length_identity", "sup_bound", "pointwise_estimate", "zeros_census"};
    if (j.contains("checks")) {
      const auto& c = j.at("checks");
      if (!c.is_array()) fail(path, text, "checks", "'checks' must be an array");
      if (c.empty()) fail(path, text, "checks", "check list is empty");
      rc.checks.clear();
      for (const auto& e : c) {
        if (!e.is_string()) fail(path, text, "checks", "check names must be strings");
        const std::string name = e.get<std::string>();
        if (!known_checks().count(name)) {
          fail(path, text, "checks", "unknown check '" + name + "'");
        }
        rc.checks.push_back(name);
      }
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (!t.is_object()) fail(path, text, "tolerances", "'tolerances' must be an object");
      for (auto it = t.begin(); it != t.end(); ++it) {
        if (!known_checks().count(it.key())) {
          fail(path, text, "tolerances", "unknown check '" + it.key() + "'");
        }
        if (!it.value().is_number()) {
          fail(path, text, "tolerances", "tolerance for '" + it.key() + "' must be a number");
        }
        rc.tolerances[it.key()] = it.value().get<double>();
      }
    }
  }

  auto int_list = [&](const std::string& key, std::vector<int>& out) {
    if (!j.contains(key)) return;
    const auto& a = j.at(key);
    if (!a.is_array() || a.empty()) fail(path, text, key, "'" + key + "' must be a nonempty array");
    out.clear();
    for (const auto& e : a) {
      if (!e.is_number_integer()) fail(path, text, key, "'" + key + "' entries must be integers");
      out.push_back(e.get<int>());
    }
  };
  auto num_list = [&](const std::string& key, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const auto& a = j.at(key);
    if (!a.is_array() || a.empty()) fail(path, text, key, "'" + key + "' must be a nonempty array");
    out.clear();
    for (const auto& e : a) {
      if (!e.is_number()) fail(path, text, key, "'" + key + "' entries must be numbers");
      out.push_back(e.get<double>());
    }
  };

  if (command == "index") {
    int_list("degrees", rc.degrees);
    int_list("ns", rc.ns);
    for (int n : rc.ns) {
      if (n < 4 || n > 16) {
        fail(path, text, "ns", "index grid sizes must be in [4, 16] (dense assembly)");
      }
    }
  }
  if (command == "sweep") {
    num_list("tau_schedule", rc.tau_schedule);
    int_list("sweep_degrees", rc.sweep_degrees);
    num_list("sweep_vols_over_pi", rc.sweep_vols_over_pi);
    const bool grid = !rc.sweep_degrees.empty() || !rc.sweep_vols_over_pi.empty();
    if (rc.tau_schedule.empty() && !grid) {
      fail(path, text, "tau_schedule",
           "sweep needs 'tau_schedule' or a 'sweep_degrees' x 'sweep_vols_over_pi' grid");
    }
    if (!rc.tau_schedule.empty() && grid) {
      fail(path, text, "tau_schedule",
           "sweep takes either 'tau_schedule' or a grid, not both");
    }
    if (grid && (rc.sweep_degrees.empty() || rc.sweep_vols_over_pi.empty())) {
      fail(path, text, "sweep_degrees",
           "grid sweeps need both 'sweep_degrees' and 'sweep_vols_over_pi'");
    }
    for (double v : rc.sweep_vols_over_pi) {
      if (v <= 0.0) fail(path, text, "sweep_vols_over_pi", "volumes must be positive");
    }
  }
  if (command == "topology") {
    rc.k_max = x.integer("k_max", rc.k_max);
    if (rc.k_max < 0) fail(path, text, "k_max", "'k_max' must be >= 0");
    int_list("table_degrees", rc.table_degrees);
  }

  // Range checks shared by all commands.
  if (rc.solve.n < 4) fail(path, text, "n", "'n' must be >= 4");
  if (rc.solve.vol <= 0.0) fail(path, text, "vol", "'vol' must be positive");
  if (rc.solve.rtol <= 0.0) fail(path, text, "rtol", "'rtol' must be positive");
  if (rc.solve.max_iter < 1) fail(path, text, "max_iter", "'max_iter' must be >= 1");
  if (rc.jobs < 1) fail(path, text, "jobs", "'jobs' must be >= 1");
  if (!std::isfinite(rc.solve.tau)) fail(path, text, "tau", "'tau' must be finite");

  return rc;
}

RunConfig parse_run_config(const std::string& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config_text(buf.str(), command, path);
}

}  // namespace vortex
