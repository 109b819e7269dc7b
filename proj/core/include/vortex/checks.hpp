#pragma once

// Named verification checks with pass/fail verdicts and measured quantities.
// Each CheckResult records what was measured, what was expected, the declared
// tolerance and comparison mode, and a self-contained note stating the
// identity under test.  Discretization slack is always explicit.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vortex/solver.hpp"

namespace vortex {

enum class Comparison {
  abs_diff,     // pass iff |measured - expected| <= tolerance
  rel_diff,     // pass iff |measured - expected| <= tolerance * scale(expected)
  upper_bound,  // pass iff measured <= expected * (1 + tolerance)
};

const char* to_string(Comparison c);

struct CheckResult {
  std::string name;
  std::string parameters;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::rel_diff;
  bool pass = false;
  std::string note;
};

// ||phi||^2 = (tau - tau0) * vol for solutions; relative tolerance (default
// 2%, sized for n = 64).  Throws std::invalid_argument on unconverged input.
CheckResult check_length_identity(const SolveReport& rep, double tau, double tol = 0.02);

// max |phi|^2 <= tau, with 2% discretization slack.
CheckResult check_sup_bound(const SolveReport& rep, double tau, double slack = 0.02);

// Per-plaquette phase-winding census of a section against a connection:
// winding = (sum of reduced transported phase differences around the
// plaquette minus the reduced circulation) / 2pi.  Keys are plaquette
// indices; zero-winding plaquettes are omitted.  Sums to the bundle degree.
std::map<int, int> winding_census(const Connection& c, const Section& phi);

// Zeros of phi as a divisor: nonzero-winding plaquette centers.  Sites where
// |phi| < 1e-12 make the corner phases unusable; each such site is reported
// as a divisor point at the site itself, with multiplicity measured by the
// phase winding of the 8-link loop enclosing it.
Divisor locate_zeros(const Connection& c, const Section& phi);

// Analytic trichotomy for one degree: d < 0 -> empty; else by sign of
// tau - 4 pi d / vol.  When vol_over_pi is supplied (vol = pi *
// vol_over_pi), the boundary case is detected by the exact comparison
// 4 d == tau * vol_over_pi; otherwise within 1e-12 relative.
Classification classify_degree_analytic(int d, double vol, double tau,
                                        std::optional<double> vol_over_pi = std::nullopt);

// {d : 0 <= d <= tau*vol/4pi} with per-degree classification tags.
std::vector<std::pair<int, Classification>> admissible_degrees(
    double vol, double tau, std::optional<double> vol_over_pi = std::nullopt);

struct ClassifyResult {
  Classification label = Classification::inconclusive;
  std::vector<Classification> probes;  // one per random seed
};

// Classify the solution space by solving from `probes` random seeds.  The
// label is the common outcome; disagreement yields `inconclusive`, which
// callers must treat as failure.
ClassifyResult classify_solution_space(int d, double vol, double tau, int n,
                                       std::uint64_t seed = 1, int probes = 5);

// Pointwise curvature estimate: laplacian(|phi|^2) <= 4 Re <dbar* dbar phi,
// phi> + 2 (i*F) |phi|^2 + C h sitewise.  Measured value is the largest
// violation margin; the tolerance is C*h with the constant declared up
// front.  Valid for any state, converged or not.
CheckResult check_pointwise_estimate(const Connection& c, const Section& phi, double tau,
                                     double constant = 10.0);
CheckResult check_pointwise_estimate(const SolveReport& rep, double tau,
                                     double constant = 10.0);

// Largest violation margin max_s(LHS - RHS) of the pointwise estimate;
// exposed for refinement studies.
double pointwise_estimate_margin(const Connection& c, const Section& phi);

}  // namespace vortex
