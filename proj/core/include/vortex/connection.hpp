#pragma once

// Degree-d Hermitian line bundle over the lattice torus, encoded as link
// transport angles: a fixed Landau-gauge base assignment with constant
// curvature plus a dynamical real 1-form alpha.  Transport along a link is
// exp(i*(base_angle + alpha)).  See geometry.hpp for the orientation and
// branch conventions.

#include <complex>
#include <stdexcept>

#include "vortex/geometry.hpp"

namespace vortex {

// Raised when a plaquette circulation lands within 1e-9 of the +-pi branch
// point, where the integer flux assignment is ambiguous.
struct BranchCutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Connection {
  const TorusGeometry* geom = nullptr;
  int d = 0;                // bundle degree
  Cochain1 base_angles;     // Landau-gauge transport angles of the base connection
  Cochain1 alpha;           // perturbation 1-form (line-integral values)

  double angle(int link) const { return base_angles[link] + alpha[link]; }
  std::complex<double> transport(int link) const {
    return {std::cos(angle(link)), std::sin(angle(link))};
  }
};

// Constant-curvature base connection: flux 2*pi*d/n^2 per plaquette,
// realized with one branch-cut row of y-links; alpha = 0.
Connection base_connection(const TorusGeometry& g, int d);

// (-1/2pi) * sum of branch-reduced plaquette circulations; exact integer.
// Throws BranchCutError on circulations within 1e-9 of +-pi.
int degree(const Connection& c);

// Per-plaquette i*F = -(branch-reduced circulation)/h^2; integrates to 2*pi*d.
Cochain2 curvature_scalar(const Connection& c);

// Gauge transformation u = exp(2*pi*i*(f + winding linear phase)).  The
// winding component (w_x, w_y) is stored as integers; its action uses the
// harmonic representative: a uniform angle shift of -2*pi*w/n on every link
// of the corresponding direction (the transports agree with the multivalued
// exp(2*pi*i*w*x/l) transformation, and the stored alpha stays single-valued).
struct GaugeTransformation {
  Cochain0 f;     // real function per site
  int wx = 0;
  int wy = 0;
};

// Action on a pair: phi' = u*phi, alpha' = alpha - 2*pi*d0(f) - winding shift.
void gauge_transform(const GaugeTransformation& u, Section& phi, Connection& c);

// Harmonic part of alpha in continuum 1-form coefficients (link mean / h),
// wrapped into the fundamental cell (-q/2, q/2] of the large-gauge lattice,
// q = 2*pi/side.
Eigen::Vector2d picard_coordinate(const Connection& c);

}  // namespace vortex
