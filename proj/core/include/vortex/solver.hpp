#pragma once

// Damped Gauss-Newton (Levenberg-Marquardt) solver for residual = 0, with
// divisor seeding, gradient-flow fallback, and tau-continuation.
//
// Outcomes are reported on three independent axes:
//   converged      -- residual norm reached rtol (absolute, on the weighted
//                     stacked vector);
//   floor_reached  -- the run stalled against the integral obstruction: when
//                     2 pi d > tau vol / 2 the b-block integral cannot go
//                     below 2 pi d - tau vol / 2, which bounds the norm away
//                     from zero; stopping there is a successful
//                     classification ("empty"), not an error;
//   diverged       -- the norm grew 10x above its starting value, a genuine
//                     numerical failure (distinct exit code at the CLI).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vortex/theta.hpp"
#include "vortex/vortex_map.hpp"

namespace vortex {

enum class Classification {
  unclassified,
  empty,          // no solutions (obstruction floor)
  picard_torus,   // solutions with phi = 0 only
  vortex_moduli,  // genuine vortex solutions
  inconclusive,   // classification probes disagreed
};

const char* to_string(Classification c);

struct SolveConfig {
  int d = 0;
  double tau = 1.0;
  double vol = 12.566370614359172;  // 4 pi
  int n = 32;
  // Seed divisor; when absent, d points are placed evenly along the
  // horizontal midline (the d = 1 default is the torus center).
  std::optional<Divisor> divisor;
  Eigen::Vector2d picard_target = Eigen::Vector2d::Zero();
  int max_iter = 200;
  double rtol = 1e-8;       // absolute tolerance on the weighted residual norm
  double lambda0 = 1e-3;    // initial LM damping
  double lambda_max = 1e8;  // damping ceiling
  double cg_tol = 1e-3;     // relative tolerance of the inner CG solves
  int cg_maxit = 400;
  int flow_steps = 20;  // gradient-flow fallback length
  std::uint64_t rng_seed = 1;
  bool randomize = false;  // random divisor + field noise (classification probes)
};

struct SolveReport {
  bool converged = false;
  bool diverged = false;
  bool floor_reached = false;
  Classification classification = Classification::unclassified;
  double final_norm = 0.0;
  std::vector<double> trace;  // residual norm per outer iteration (incl. start)
  int iterations = 0;
  Section phi;
  Cochain1 alpha;
  double phi_norm_sq = 0.0;  // h^2 sum |phi|^2
  double max_abs_phi = 0.0;
  double b_integral = 0.0;
  int d = 0, n = 0;
  double tau = 0.0, vol = 0.0;
  double wall_seconds = 0.0;
};

// Evenly spaced degree-d divisor on the horizontal midline.
Divisor default_divisor(const TorusGeometry& g, int d);

// Seed state: phase from the degree-d theta-function section through the
// divisor (so windings and transition structure are right), amplitude
// sqrt(max(0, tau - tau0)) with a tanh dip of width ~3h at each divisor
// point; alpha = 0.  Throws on divisor degree mismatch; warns (stderr) when
// two points are closer than 3h.
std::pair<Section, Cochain1> seed_from_divisor(const TorusGeometry& g, int d, double tau,
                                               const Divisor& div);

SolveReport solve(const SolveConfig& cfg);

// Warm-started variant used by continuation; phi0/alpha0 sized for cfg.n.
SolveReport solve_from(const SolveConfig& cfg, const Section& phi0, const Cochain1& alpha0);

// Solve along a monotone tau schedule, warm-starting each stage from the
// previous final state.  Throws std::invalid_argument for non-monotone
// schedules; per-stage failures are recorded in the reports and the schedule
// continues.
std::vector<SolveReport> continue_in_tau(SolveConfig cfg, const std::vector<double>& schedule);

}  // namespace vortex
