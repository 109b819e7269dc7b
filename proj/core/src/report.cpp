#include "vortex/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "vortex/version.hpp"

namespace vortex {

namespace {

using nlohmann::json;

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json params_json(const RunConfig& rc) {
  json p;
  p["d"] = rc.solve.d;
  p["tau"] = rc.solve.tau;
  p["vol"] = rc.solve.vol;
  if (rc.vol_over_pi) p["vol_over_pi"] = *rc.vol_over_pi;
  p["n"] = rc.solve.n;
  p["rtol"] = rc.solve.rtol;
  p["max_iter"] = rc.solve.max_iter;
  p["seed"] = rc.solve.rng_seed;
  p["randomize"] = rc.solve.randomize;
  p["picard_target"] = {rc.solve.picard_target[0], rc.solve.picard_target[1]};
  if (rc.solve.divisor) {
    json dv = json::array();
    for (const auto& pt : *rc.solve.divisor) dv.push_back({pt.x, pt.y, pt.multiplicity});
    p["divisor"] = dv;
  }
  return p;
}

json metadata_json(double wall_seconds) {
  json m;
  m["timestamp_utc"] = timestamp_utc();
  m["wall_seconds"] = wall_seconds;
  return m;
}

}  // namespace

std::string hex_hash(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json solve_report_json(const RunConfig& rc, const SolveReport& rep) {
  json r;
  r["command"] = rc.command;
  r["version"] = kVersion;
  r["config_hash"] = hex_hash(rc.config_hash);
  r["params"] = params_json(rc);

  json res;
  res["converged"] = rep.converged;
  res["diverged"] = rep.diverged;
  res["floor_reached"] = rep.floor_reached;
  res["classification"] = to_string(rep.classification);
  res["final_norm"] = rep.final_norm;
  res["iterations"] = rep.iterations;
  res["trace"] = rep.trace;
  res["phi_norm_sq"] = rep.phi_norm_sq;
  res["max_abs_phi"] = rep.max_abs_phi;
  res["b_integral"] = rep.b_integral;

  TorusGeometry g = build_torus(rep.n, rep.vol);
  Connection conn = base_connection(g, rep.d);
  conn.alpha = rep.alpha;
  const Eigen::Vector2d pc = picard_coordinate(conn);
  res["picard_coordinate"] = {pc[0], pc[1]};
  json zeros = json::array();
  for (const auto& pt : locate_zeros(conn, rep.phi)) {
    zeros.push_back({pt.x, pt.y, pt.multiplicity});
  }
  res["zeros"] = zeros;
  r["result"] = res;

  r["metadata"] = metadata_json(rep.wall_seconds);
  return r;
}

std::string fields_csv(const SolveReport& rep) {
  TorusGeometry g = build_torus(rep.n, rep.vol);
  Connection conn = base_connection(g, rep.d);
  conn.alpha = rep.alpha;
  const Cochain2 curv = curvature_scalar(conn);

  std::string out = "site,x,y,re_phi,im_phi,abs_phi_sq,i_star_f\n";
  char row[256];
  for (int s = 0; s < g.sites(); ++s) {
    std::snprintf(row, sizeof(row), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s,
                  g.x_of(s), g.y_of(s), rep.phi[s].real(), rep.phi[s].imag(),
                  std::norm(rep.phi[s]), curv[s]);
    out += row;
  }
  return out;
}

json check_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["parameters"] = c.parameters;
  j["measured"] = c.measured;
  j["expected"] = c.expected;
  j["tolerance"] = c.tolerance;
  j["comparison"] = to_string(c.comparison);
  j["pass"] = c.pass;
  j["note"] = c.note;
  return j;
}

json checks_json(const RunConfig& rc, const std::vector<CheckResult>& checks,
                 double wall_seconds) {
  json r;
  r["command"] = rc.command;
  r["version"] = kVersion;
  r["config_hash"] = hex_hash(rc.config_hash);
  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    list.push_back(check_json(c));
  }
  r["all_pass"] = all;
  r["checks"] = list;
  r["metadata"] = metadata_json(wall_seconds);
  return r;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vortex
