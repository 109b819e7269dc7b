#pragma once

// Analytic sections of the degree-d bundle built from Jacobi theta functions,
// sampled in the same Landau gauge as base_connection.  These provide
// (a) smooth reference fields for convergence studies (their covariant
// forward differences are O(h)-accurate across the branch-cut row), and
// (b) phase templates for divisor seeding.

#include <complex>
#include <vector>

#include "vortex/geometry.hpp"

namespace vortex {

// theta_3(v; modulus i) = sum_m exp(-pi m^2) exp(2 pi i m v).
std::complex<double> theta3(std::complex<double> v);

// Shifted theta factor vanishing exactly on the unit lattice Z + iZ.
inline std::complex<double> theta_c(std::complex<double> v) {
  return theta3(v + std::complex<double>(0.5, 0.5));
}

struct DivisorPoint {
  double x = 0;
  double y = 0;
  int multiplicity = 1;
};
using Divisor = std::vector<DivisorPoint>;

// Smooth section with zeros exactly at the divisor points (with multiplicity):
//   phi(z) = prod_j theta_c((z - p_j)/l)^{m_j} * exp(-pi d (y/l)^2 + a y),
//   a = 2 pi Im(sum m_j p_j)/l^2 - pi d / l,
// normalized to max |phi| = 1.  The quasi-periodicity factors match the
// branch-cut row of base_connection exactly when the divisor satisfies the
// torus Abel constraint sum m_j p_j = d*(l/2)(1+i) mod the lattice; for other
// divisors the section is still smooth in the bulk but carries a constant
// phase offset across the wrap.
Section theta_section(const TorusGeometry& g, int d, const Divisor& div);

// Shortest torus distance between two points.
double torus_distance(const TorusGeometry& g, double x0, double y0, double x1, double y1);

}  // namespace vortex
