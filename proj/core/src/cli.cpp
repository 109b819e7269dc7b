#include "vortex/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "vortex/index.hpp"
#include "vortex/invariants.hpp"
#include "vortex/parallel.hpp"
#include "vortex/report.hpp"
#include "vortex/rng.hpp"
#include "vortex/version.hpp"

namespace vortex {

namespace {

using nlohmann::json;

constexpr double kPi = 3.1415926535897932384626433832795;

std::string out_path(const RunConfig& rc, const std::string& file) {
  return (std::filesystem::path(rc.out_dir) / file).string();
}

int cmd_solve(const RunConfig& rc) {
  const SolveReport rep = solve(rc.solve);
  write_text_file(out_path(rc, "solve_report.json"), solve_report_json(rc, rep).dump(2) + "\n");
  write_text_file(out_path(rc, "fields.csv"), fields_csv(rep));
  if (rep.diverged) {
    std::cerr << "solve diverged (norm grew 10x); see solve_report.json\n";
    return 2;
  }
  if (rep.converged || rep.classification != Classification::unclassified) {
    std::cout << "solve: " << (rep.converged ? "converged" : "classified") << " ("
              << to_string(rep.classification) << "), final norm " << rep.final_norm
              << "\n";
    return 0;
  }
  std::cerr << "solve did not converge within max_iter and could not be classified\n";
  return 2;
}

int cmd_verify(const RunConfig& rc) {
  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport rep = solve(rc.solve);
  if (rep.diverged) {
    std::cerr << "verify: underlying solve diverged\n";
    return 2;
  }

  auto tol = [&](const std::string& name, double def) {
    auto it = rc.tolerances.find(name);
    return it == rc.tolerances.end() ? def : it->second;
  };

  std::vector<CheckResult> results;
  for (const std::string& name : rc.checks) {
    try {
      if (name == "length_identity") {
        results.push_back(check_length_identity(rep, rc.solve.tau, tol(name, 0.02)));
      } else if (name == "sup_bound") {
        results.push_back(check_sup_bound(rep, rc.solve.tau, tol(name, 0.02)));
      } else if (name == "pointwise_estimate") {
        results.push_back(check_pointwise_estimate(rep, rc.solve.tau, tol(name, 10.0)));
      } else if (name == "zeros_census") {
        TorusGeometry g = build_torus(rep.n, rep.vol);
        Connection conn = base_connection(g, rep.d);
        conn.alpha = rep.alpha;
        CheckResult r;
        r.name = name;
        std::ostringstream os;
        os << "d=" << rep.d << " vol=" << rep.vol << " tau=" << rc.solve.tau
           << " n=" << rep.n;
        r.parameters = os.str();
        int total = 0;
        for (const auto& pt : locate_zeros(conn, rep.phi)) total += pt.multiplicity;
        r.measured = total;
        r.expected = rep.d;
        r.tolerance = tol(name, 0.0);
        r.comparison = Comparison::abs_diff;
        r.pass = std::abs(r.measured - r.expected) <= r.tolerance;
        r.note = "total phase winding of the zero divisor equals the bundle degree";
        results.push_back(r);
      }
    } catch (const std::invalid_argument& e) {
      CheckResult r;
      r.name = name;
      r.pass = false;
      r.note = std::string("refused: ") + e.what();
      results.push_back(r);
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const json doc = checks_json(rc, results, wall);
  write_text_file(out_path(rc, "checks.json"), doc.dump(2) + "\n");
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  measured="
              << r.measured << " expected=" << r.expected << "\n";
  }
  return doc.at("all_pass").get<bool>() ? 0 : 3;
}

int cmd_index(const RunConfig& rc) {
  struct Cell {
    int d = 0, n = 0;
    bool ok = false;
    int index = 0, expected = 0;
    OverlapIndexResult overlap;
    FixedPointResult fixed;
    std::string error;
  };
  std::vector<Cell> cells;
  for (int n : rc.ns) {
    for (int d : rc.degrees) cells.push_back({d, n});
  }

  parallel_for(static_cast<int>(cells.size()), rc.jobs, [&](int i) {
    Cell& c = cells[i];
    try {
      TorusGeometry g = build_torus(c.n, rc.solve.vol);
      Connection conn = base_connection(g, c.d);
      c.overlap = overlap_index(conn);
      c.fixed = one_form_block_analysis(g);
      c.index = 2 * c.overlap.complex_index + c.fixed.index;
      c.expected = riemann_roch(c.d, 1).real_index;
      c.ok = c.index == c.expected && c.fixed.sigma_min > 0.0 &&
             c.fixed.cokernel_dim == 1;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });

  bool all = true;
  json rows = json::array();
  for (const Cell& c : cells) {
    all = all && c.ok;
    json r;
    r["d"] = c.d;
    r["n"] = c.n;
    r["numerical_index"] = c.index;
    r["expected_real_index"] = c.expected;
    r["match"] = c.ok;
    r["overlap"] = {{"n_plus", c.overlap.n_plus},
                    {"n_minus", c.overlap.n_minus},
                    {"gap", c.overlap.gap}};
    r["fixed_point"] = {{"sigma_min", c.fixed.sigma_min},
                        {"cokernel_dim", c.fixed.cokernel_dim},
                        {"index", c.fixed.index}};
    if (!c.error.empty()) r["error"] = c.error;
    rows.push_back(r);
    std::cout << "d=" << c.d << " n=" << c.n << ": index " << c.index << " (expected "
              << c.expected << ") " << (c.ok ? "ok" : "MISMATCH") << "\n";
  }

  json doc;
  doc["command"] = rc.command;
  doc["version"] = kVersion;
  doc["config_hash"] = hex_hash(rc.config_hash);
  doc["cells"] = rows;
  doc["all_match"] = all;
  doc["metadata"] = json::object();
  write_text_file(out_path(rc, "index_report.json"), doc.dump(2) + "\n");
  return all ? 0 : 3;
}

int cmd_sweep(const RunConfig& rc) {
  json doc;
  doc["command"] = rc.command;
  doc["version"] = kVersion;
  doc["config_hash"] = hex_hash(rc.config_hash);

  if (!rc.tau_schedule.empty()) {
    const std::vector<SolveReport> reps = continue_in_tau(rc.solve, rc.tau_schedule);
    std::string csv = "stage,tau,converged,classification,final_norm,phi_norm_sq,b_integral\n";
    json rows = json::array();
    bool diverged = false;
    char buf[256];
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const SolveReport& r = reps[i];
      diverged = diverged || r.diverged;
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%d,%s,%.17g,%.17g,%.17g\n", i, r.tau,
                    r.converged ? 1 : 0, to_string(r.classification), r.final_norm,
                    r.phi_norm_sq, r.b_integral);
      csv += buf;
      json row;
      row["stage"] = i;
      row["tau"] = r.tau;
      row["converged"] = r.converged;
      row["classification"] = to_string(r.classification);
      row["final_norm"] = r.final_norm;
      row["phi_norm_sq"] = r.phi_norm_sq;
      row["b_integral"] = r.b_integral;
      rows.push_back(row);
    }
    doc["stages"] = rows;
    doc["metadata"] = json::object();
    write_text_file(out_path(rc, "sweep.csv"), csv);
    write_text_file(out_path(rc, "sweep_report.json"), doc.dump(2) + "\n");
    return diverged ? 2 : 0;
  }

  struct Cell {
    int d = 0;
    double vol_over_pi = 0.0;
    ClassifyResult result;
    Classification analytic = Classification::unclassified;
  };
  std::vector<Cell> cells;
  for (int d : rc.sweep_degrees) {
    for (double v : rc.sweep_vols_over_pi) cells.push_back({d, v});
  }

  parallel_for(static_cast<int>(cells.size()), rc.jobs, [&](int i) {
    Cell& c = cells[i];
    const double vol = kPi * c.vol_over_pi;
    c.analytic = classify_degree_analytic(c.d, vol, rc.solve.tau, c.vol_over_pi);
    c.result = classify_solution_space(
        c.d, vol, rc.solve.tau, rc.solve.n,
        derive_seed(rc.solve.rng_seed, static_cast<std::uint64_t>(i)));
  });

  std::string csv = "d,vol_over_pi,tau,classification,analytic,agree\n";
  json rows = json::array();
  bool any_inconclusive = false;
  char buf[256];
  for (const Cell& c : cells) {
    const bool agree = c.result.label == c.analytic;
    any_inconclusive =
        any_inconclusive || c.result.label == Classification::inconclusive || !agree;
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%s,%s,%d\n", c.d, c.vol_over_pi,
                  rc.solve.tau, to_string(c.result.label), to_string(c.analytic),
                  agree ? 1 : 0);
    csv += buf;
    json row;
    row["d"] = c.d;
    row["vol_over_pi"] = c.vol_over_pi;
    row["tau"] = rc.solve.tau;
    row["classification"] = to_string(c.result.label);
    row["analytic"] = to_string(c.analytic);
    json probes = json::array();
    for (Classification p : c.result.probes) probes.push_back(to_string(p));
    row["probes"] = probes;
    row["agree"] = agree;
    rows.push_back(row);
    std::cout << "d=" << c.d << " vol=" << c.vol_over_pi << "*pi: "
              << to_string(c.result.label) << (agree ? "" : "  (DISAGREES)") << "\n";
  }
  doc["cells"] = rows;
  doc["metadata"] = json::object();
  write_text_file(out_path(rc, "sweep.csv"), csv);
  write_text_file(out_path(rc, "sweep_report.json"), doc.dump(2) + "\n");
  return any_inconclusive ? 3 : 0;
}

int cmd_topology(const RunConfig& rc) {
  json doc;
  doc["command"] = rc.command;
  doc["version"] = kVersion;
  doc["config_hash"] = hex_hash(rc.config_hash);

  json rr = json::array();
  for (int genus : {0, 1}) {
    for (int d : rc.table_degrees) {
      const IndexData ix = riemann_roch(d, genus);
      rr.push_back({{"d", d},
                    {"genus", genus},
                    {"complex_index", ix.complex_index},
                    {"real_index", ix.real_index}});
    }
  }
  doc["riemann_roch"] = rr;

  json ch = json::array();
  for (int k = 0; k <= rc.k_max; ++k) {
    ch.push_back({{"k", k}, {"coefficient", chern_coefficient(k).str()}});
  }
  doc["chern_coefficients"] = ch;

  json go = json::array();
  for (int d : rc.table_degrees) {
    const GroupOrder g = genus0_group_order(d);
    json row;
    row["d"] = d;
    if (g.order) {
      row["order"] = *g.order;
      std::cout << "d=" << d << ": order " << *g.order << "\n";
    } else {
      row["order"] = "unknown";
      std::cout << "d=" << d << ": order unknown (finite)\n";
    }
    row["finite"] = g.finite;
    go.push_back(row);
  }
  doc["genus0_group_orders"] = go;

  json md = json::array();
  for (int d : rc.table_degrees) {
    md.push_back({{"d", d},
                  {"genus", 1},
                  {"tau0_below_tau", moduli_dimension(d, 1, TauSign::below)},
                  {"tau0_equal_tau", moduli_dimension(d, 1, TauSign::equal)},
                  {"tau0_above_tau", moduli_dimension(d, 1, TauSign::above)}});
  }
  doc["moduli_dimensions"] = md;

  doc["metadata"] = json::object();
  write_text_file(out_path(rc, "topology.json"), doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_command(const CliOptions& opts) {
  RunConfig rc;
  try {
    rc = parse_run_config(opts.config_path, opts.command);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (opts.out_dir) rc.out_dir = *opts.out_dir;
  if (opts.jobs) rc.jobs = *opts.jobs;
  if (opts.seed) rc.solve.rng_seed = *opts.seed;

  try {
    if (rc.command == "solve") return cmd_solve(rc);
    if (rc.command == "verify") return cmd_verify(rc);
    if (rc.command == "index") return cmd_index(rc);
    if (rc.command == "sweep") return cmd_sweep(rc);
    if (rc.command == "topology") return cmd_topology(rc);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "unknown command '" << rc.command << "'\n";
  return 1;
}

}  // namespace vortex
