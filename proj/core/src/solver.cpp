#include "vortex/solver.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>
#include <tuple>

#include "vortex/rng.hpp"

namespace vortex {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

// Jacobi-preconditioned CG for the damped normal equations
// (J^T J + lambda diag(D)) x = rhs.  Inexact inner solve: relative tolerance
// tol on the CG residual is all Gauss-Newton needs far from the solution.
Eigen::VectorXd solve_normal_cg(const Linearization& lin, const Eigen::VectorXd& D,
                                double lambda, const Eigen::VectorXd& rhs, double tol,
                                int maxit) {
  const Eigen::ArrayXd minv = 1.0 / (D.array() * (1.0 + lambda));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = (minv * r.array()).matrix();
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double stop = tol * rhs.norm();
  for (int it = 0; it < maxit; ++it) {
    if (r.norm() <= stop) break;
    Eigen::VectorXd q = lin.apply_transpose(lin.apply(p));
    q += (lambda * D.array() * p.array()).matrix();
    const double pq = p.dot(q);
    if (pq <= 0.0) break;  // numerical loss of positivity; use current iterate
    const double a = rz / pq;
    x += a * p;
    r -= a * q;
    z = (minv * r.array()).matrix();
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return x;
}

struct Evaluation {
  VortexResidual res;
  Eigen::VectorXd stacked;
  double norm = 0.0;
};

Evaluation evaluate(const Connection& conn, const Section& phi, const SolveConfig& cfg) {
  Evaluation ev;
  ev.res = residual(conn, phi, cfg.tau, cfg.picard_target);
  ev.stacked = ev.res.stacked();
  ev.norm = ev.stacked.norm();
  return ev;
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::unclassified:
      return "unclassified";
    case Classification::empty:
      return "empty";
    case Classification::picard_torus:
      return "picard_torus";
    case Classification::vortex_moduli:
      return "vortex_moduli";
    case Classification::inconclusive:
      return "inconclusive";
  }
  return "unclassified";
}

Divisor default_divisor(const TorusGeometry& g, int d) {
  Divisor div;
  for (int j = 0; j < d; ++j) {
    div.push_back({(2.0 * j + 1.0) * g.side / (2.0 * d), 0.5 * g.side, 1});
  }
  return div;
}

std::pair<Section, Cochain1> seed_from_divisor(const TorusGeometry& g, int d, double tau,
                                               const Divisor& div) {
  int total = 0;
  for (const auto& p : div) total += p.multiplicity;
  if (total != d) {
    throw std::invalid_argument("seed_from_divisor: divisor degree mismatch");
  }
  const double min_sep = 3.0 * g.h;
  for (std::size_t i = 0; i < div.size(); ++i) {
    for (std::size_t j = i + 1; j < div.size(); ++j) {
      if (torus_distance(g, div[i].x, div[i].y, div[j].x, div[j].y) < min_sep) {
        std::cerr << "seed_from_divisor: warning: divisor points closer than 3h; "
                     "seeding proceeds but convergence may be slow\n";
      }
    }
  }

  const double tau0 = 4.0 * kPi * d / g.vol;
  const double amp = std::sqrt(std::max(0.0, tau - tau0));

  // Phase (and transition structure) from the theta-function section through
  // the divisor; amplitude plateau with tanh dips of width ~3h at the zeros.
  Section theta = theta_section(g, d, div);
  Section phi(g.sites());
  for (int s = 0; s < g.sites(); ++s) {
    const double x = g.x_of(s), y = g.y_of(s);
    double profile = 1.0;
    for (const auto& p : div) {
      const double dist = torus_distance(g, x, y, p.x, p.y);
      profile *= std::pow(std::tanh(dist / min_sep), p.multiplicity);
    }
    const double mag = std::abs(theta[s]);
    const std::complex<double> phase = mag > 1e-14 ? theta[s] / mag : 0.0;
    phi[s] = amp * profile * phase;
  }
  return {phi, Cochain1::Zero(g.links())};
}

SolveReport solve_from(const SolveConfig& cfg, const Section& phi0, const Cochain1& alpha0) {
  const auto t_start = std::chrono::steady_clock::now();
  TorusGeometry g = build_torus(cfg.n, cfg.vol);
  Connection conn = base_connection(g, cfg.d);
  conn.alpha = alpha0;
  Section phi = phi0;

  SolveReport rep;
  rep.d = cfg.d;
  rep.n = cfg.n;
  rep.tau = cfg.tau;
  rep.vol = cfg.vol;

  // Unavoidable residual floor when the degree is too large for (tau, vol):
  // the b-integral cannot go below 2 pi d - tau vol / 2.
  const double floor_int = 2.0 * kPi * cfg.d - 0.5 * cfg.tau * cfg.vol;
  const double floor_norm = floor_int > 0.0 ? floor_int / std::sqrt(cfg.vol) : 0.0;

  Evaluation cur = evaluate(conn, phi, cfg);
  const double norm0 = cur.norm;
  rep.trace.push_back(cur.norm);

  double lambda = cfg.lambda0;
  int rejects = 0;
  bool stalled = false;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (cur.norm <= cfg.rtol) {
      rep.converged = true;
      break;
    }
    if (floor_int > 0.0 && cur.norm <= 1.02 * floor_norm) {
      rep.floor_reached = true;
      break;
    }
    if (cur.norm > 10.0 * std::max(norm0, cfg.rtol)) {
      rep.diverged = true;
      break;
    }

    Linearization lin(conn, phi, cfg.tau);
    const Eigen::VectorXd D = lin.normal_diagonal();
    const Eigen::VectorXd grad = lin.apply_transpose(cur.stacked);
    const Eigen::VectorXd step =
        solve_normal_cg(lin, D, lambda, -grad, cfg.cg_tol, cfg.cg_maxit);

    Eigen::VectorXd x = pack_state(g, phi, conn.alpha) + step;
    Section phi_trial;
    Cochain1 alpha_trial;
    unpack_state(g, x, phi_trial, alpha_trial);

    bool accepted = false;
    Connection trial_conn = conn;
    trial_conn.alpha = alpha_trial;
    try {
      Evaluation trial = evaluate(trial_conn, phi_trial, cfg);
      if (trial.norm < cur.norm) {
        phi = phi_trial;
        conn.alpha = alpha_trial;
        cur = trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        rejects = 0;
        accepted = true;
      }
    } catch (const BranchCutError&) {
      // step walked onto the curvature branch cut; treat as a rejection
    }
    if (!accepted) {
      lambda = std::min(lambda * 4.0, cfg.lambda_max);
      ++rejects;
      if (rejects >= 5) {
        // Gradient-flow fallback: steepest descent with Cauchy step length
        // and backtracking, to escape regions where GN steps fail.
        const double norm_before = cur.norm;
        for (int k = 0; k < cfg.flow_steps; ++k) {
          Linearization flin(conn, phi, cfg.tau);
          const Eigen::VectorXd fg = flin.apply_transpose(cur.stacked);
          const double jg2 = flin.apply(fg).squaredNorm();
          if (jg2 <= 0.0) break;
          double t = fg.squaredNorm() / jg2;
          bool moved = false;
          for (int bt = 0; bt < 6 && !moved; ++bt, t *= 0.5) {
            Eigen::VectorXd xf = pack_state(g, phi, conn.alpha) - t * fg;
            Section pf;
            Cochain1 af;
            unpack_state(g, xf, pf, af);
            Connection cf = conn;
            cf.alpha = af;
            try {
              Evaluation ef = evaluate(cf, pf, cfg);
              if (ef.norm < cur.norm) {
                phi = pf;
                conn.alpha = af;
                cur = ef;
                moved = true;
              }
            } catch (const BranchCutError&) {
            }
          }
          if (!moved) break;
        }
        rejects = 0;
        lambda = std::min(lambda, 1.0);
        if (cur.norm > (1.0 - 1e-10) * norm_before) {
          stalled = true;  // neither GN nor flow makes progress
        }
      }
    }
    rep.trace.push_back(cur.norm);
    rep.iterations = iter + 1;
    if (stalled) break;
  }

  if (!rep.converged && !rep.diverged && !rep.floor_reached) {
    // Ran out of iterations or stalled: an honest floor classification still
    // applies if the norm sits against the obstruction bound.
    if (floor_int > 0.0 && cur.norm <= 1.2 * floor_norm) rep.floor_reached = true;
  }

  rep.final_norm = cur.norm;
  rep.phi = phi;
  rep.alpha = conn.alpha;
  rep.phi_norm_sq = g.h * g.h * phi.abs2().sum();
  rep.max_abs_phi = phi.size() > 0 ? std::sqrt(phi.abs2().maxCoeff()) : 0.0;
  rep.b_integral = cur.res.b_integral();

  if (rep.converged) {
    rep.classification = rep.max_abs_phi < 0.05 ? Classification::picard_torus
                                                : Classification::vortex_moduli;
  } else if (rep.floor_reached) {
    rep.classification = Classification::empty;
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

SolveReport solve(const SolveConfig& cfg) {
  TorusGeometry g = build_torus(cfg.n, cfg.vol);
  Divisor div;
  Section phi0;
  Cochain1 alpha0;
  if (cfg.randomize) {
    Rng rng(cfg.rng_seed);
    for (int j = 0; j < cfg.d; ++j) {
      div.push_back({rng.uniform(0.0, g.side), rng.uniform(0.0, g.side), 1});
    }
    std::tie(phi0, alpha0) = seed_from_divisor(g, cfg.d, cfg.tau, div);
    const double tau0 = 4.0 * kPi * cfg.d / g.vol;
    const double noise = 0.05 * (std::sqrt(std::max(0.0, cfg.tau - tau0)) + 0.1);
    for (int s = 0; s < g.sites(); ++s) {
      phi0[s] += noise * std::complex<double>(rng.normal(), rng.normal());
    }
    for (int l = 0; l < g.links(); ++l) alpha0[l] += 0.02 * g.h * rng.normal();
  } else {
    div = cfg.divisor ? *cfg.divisor : default_divisor(g, cfg.d);
    std::tie(phi0, alpha0) = seed_from_divisor(g, cfg.d, cfg.tau, div);
  }
  return solve_from(cfg, phi0, alpha0);
}

std::vector<SolveReport> continue_in_tau(SolveConfig cfg, const std::vector<double>& schedule) {
  if (schedule.empty()) {
    throw std::invalid_argument("continue_in_tau: empty schedule");
  }
  bool nondec = true, noninc = true;
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] < schedule[i - 1]) nondec = false;
    if (schedule[i] > schedule[i - 1]) noninc = false;
  }
  if (!nondec && !noninc) {
    throw std::invalid_argument("continue_in_tau: schedule must be monotone");
  }

  std::vector<SolveReport> out;
  out.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    cfg.tau = schedule[i];
    if (i == 0) {
      out.push_back(solve(cfg));
    } else {
      out.push_back(solve_from(cfg, out.back().phi, out.back().alpha));
    }
  }
  return out;
}

}  // namespace vortex
