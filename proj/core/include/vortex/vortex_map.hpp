#pragma once

// The vortex residual map and its linearization.  For a state (phi, alpha)
// on the degree-d bundle with parameter tau, the residual has four blocks:
//
//   psi   = dbar_{B+alpha} phi                       ((0,1)-form, complex)
//   b     = i*F - (tau - |phi|^2)/2                  (2-cochain; built in the
//           exact-linear form 2 pi d/vol - d1(alpha) - (tau - |phi|^2)/2,
//           which integrates to 2 pi d - (tau vol - ||phi||^2)/2 exactly)
//   h     = harmonic part of alpha (continuum coefficients) minus the Picard
//           target, wrapped into the large-gauge cell (-q/2, q/2], q = 2pi/l
//   gauge = d0* alpha                                (zero-sum 0-cochain)
//
// The weighted stacking below realizes the L^2 norms of geometry.hpp, so
// total_norm^2 is the sum of the four component norms squared.

#include <Eigen/Dense>

#include "vortex/connection.hpp"

namespace vortex {

struct VortexResidual {
  const TorusGeometry* geom = nullptr;
  Form01 psi;
  Cochain2 b;
  Eigen::Vector2d h = Eigen::Vector2d::Zero();
  Cochain0 gauge;

  double psi_norm_sq() const { return 2.0 * geom->h * geom->h * psi.abs2().sum(); }
  double b_norm_sq() const { return geom->h * geom->h * (b * b).sum(); }
  double h_norm_sq() const { return geom->vol * h.squaredNorm(); }
  double gauge_norm_sq() const { return geom->h * geom->h * (gauge * gauge).sum(); }
  double total_norm() const {
    return std::sqrt(psi_norm_sq() + b_norm_sq() + h_norm_sq() + gauge_norm_sq());
  }
  // integral of the b component: sum b * h^2
  double b_integral() const { return geom->h * geom->h * b.sum(); }

  // Weighted real vector [sqrt2 h Re psi; sqrt2 h Im psi; h b; sqrt(vol) h-block; h gauge],
  // whose Euclidean norm equals total_norm().
  Eigen::VectorXd stacked() const;
};

// Evaluate the residual.  Throws BranchCutError if any total plaquette
// circulation is within 1e-9 of the +-pi branch.
VortexResidual residual(const Connection& c, const Section& phi, double tau,
                        const Eigen::Vector2d& picard_target = Eigen::Vector2d::Zero());

// State packing for the solver and the linearization:
// x = [Re phi (n^2); Im phi (n^2); alpha (2 n^2)].
Eigen::VectorXd pack_state(const TorusGeometry& g, const Section& phi, const Cochain1& alpha);
void unpack_state(const TorusGeometry& g, const Eigen::VectorXd& x, Section& phi,
                  Cochain1& alpha);

// Frechet derivative of the weighted residual at a state, with matrix-free
// apply / transpose-apply and an analytic diagonal of J^T J.  The operator
// captures copies of the state; the geometry must outlive it.
class Linearization {
 public:
  Linearization(const Connection& c, const Section& phi, double tau);

  int rows() const { return 4 * geom_->sites() + 2; }
  int cols() const { return 4 * geom_->sites(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;             // J v
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& w) const;   // J^T w
  Eigen::VectorXd normal_diagonal() const;                           // diag(J^T J)

  // Dense assembly by columns; refused for n > 16 (memory guard).
  Eigen::MatrixXd assemble() const;

  const Connection& connection() const { return conn_; }
  const Section& phi() const { return phi_; }
  double tau() const { return tau_; }

 private:
  const TorusGeometry* geom_;
  Connection conn_;   // copy (base + alpha) with transports precomputed below
  Section phi_;
  double tau_;
  Eigen::ArrayXcd ux_, uy_;  // link transports
};

// Assembled linearization bundled with the state it was assembled at, so
// index computations can rebuild operators from the same connection.
struct AssembledLinearization {
  Eigen::MatrixXd matrix;
  Connection conn;
  Section phi;
  double tau;
};
AssembledLinearization assemble_linearization(const Connection& c, const Section& phi,
                                              double tau);

}  // namespace vortex
