#include "vortex/connection.hpp"

#include <cmath>

namespace vortex {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

double plaquette_circulation(const TorusGeometry& g, const Cochain1& angles, int ix, int iy) {
  return angles[g.xlink(ix, iy)] + angles[g.ylink(ix + 1, iy)] - angles[g.xlink(ix, iy + 1)] -
         angles[g.ylink(ix, iy)];
}

double reduce_checked(double circ) {
  const double r = reduce_angle(circ);
  if (std::abs(std::abs(r) - kPi) < 1e-9) {
    throw BranchCutError("flux on a plaquette at branch cut boundary");
  }
  return r;
}
}  // namespace

Connection base_connection(const TorusGeometry& g, int d) {
  Connection c;
  c.geom = &g;
  c.d = d;
  c.base_angles = Cochain1::Zero(g.links());
  c.alpha = Cochain1::Zero(g.links());
  const int n = g.n;
  const double f = kTwoPi * d / (static_cast<double>(n) * n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      c.base_angles[g.xlink(ix, iy)] = f * iy;
      c.base_angles[g.ylink(ix, iy)] = (iy == n - 1) ? -f * n * ix : 0.0;
    }
  return c;
}

int degree(const Connection& c) {
  const TorusGeometry& g = *c.geom;
  Cochain1 angles = c.base_angles + c.alpha;
  double total = 0.0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      total += reduce_checked(plaquette_circulation(g, angles, ix, iy));
    }
  return static_cast<int>(std::llround(-total / kTwoPi));
}

Cochain2 curvature_scalar(const Connection& c) {
  const TorusGeometry& g = *c.geom;
  Cochain1 angles = c.base_angles + c.alpha;
  const double inv_h2 = 1.0 / (g.h * g.h);
  Cochain2 out(g.plaquettes());
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      out[g.plaq(ix, iy)] = -reduce_checked(plaquette_circulation(g, angles, ix, iy)) * inv_h2;
    }
  return out;
}

void gauge_transform(const GaugeTransformation& u, Section& phi, Connection& c) {
  const TorusGeometry& g = *c.geom;
  if (u.f.size() != g.sites() || phi.size() != g.sites()) {
    throw std::invalid_argument("gauge_transform: size mismatch");
  }
  const int n = g.n;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int s = g.site(ix, iy);
      const double phase =
          kTwoPi * (u.f[s] + (static_cast<double>(u.wx) * ix + static_cast<double>(u.wy) * iy) / n);
      phi[s] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
  c.alpha -= kTwoPi * d0(g, u.f);
  const double shift_x = kTwoPi * u.wx / n;
  const double shift_y = kTwoPi * u.wy / n;
  c.alpha.head(g.sites()) -= shift_x;
  c.alpha.tail(g.sites()) -= shift_y;
}

Eigen::Vector2d picard_coordinate(const Connection& c) {
  const TorusGeometry& g = *c.geom;
  const Eigen::Vector2d mean = harmonic_part(g, c.alpha);
  const double q = kTwoPi / g.side;
  return {wrap_to_cell(mean[0] / g.h, q), wrap_to_cell(mean[1] / g.h, q)};
}

}  // namespace vortex
