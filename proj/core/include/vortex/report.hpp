#pragma once

// Machine-readable run reports.  Reports are deterministic given the same
// config and seed; anything wall-clock-dependent (timestamps, timings) lives
// under the "metadata" key, which consumers exclude when comparing runs.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "vortex/checks.hpp"
#include "vortex/config.hpp"

namespace vortex {

std::string hex_hash(std::uint64_t h);

// solve_report.json payload: params, result (including trace, Picard
// coordinate and zero divisor), metadata.
nlohmann::json solve_report_json(const RunConfig& rc, const SolveReport& rep);

// fields.csv: site,x,y,re_phi,im_phi,abs_phi_sq,i_star_f (one row per site;
// the curvature column is the plaquette cornered at the site).
std::string fields_csv(const SolveReport& rep);

nlohmann::json check_json(const CheckResult& c);
nlohmann::json checks_json(const RunConfig& rc, const std::vector<CheckResult>& checks,
                           double wall_seconds);

// Creates parent directories as needed; throws std::runtime_error on I/O
// failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vortex
