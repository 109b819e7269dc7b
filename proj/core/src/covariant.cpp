#include "vortex/covariant.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

namespace {
void require_sites(const TorusGeometry& g, Eigen::Index got, const char* what) {
  if (got != g.sites()) throw std::invalid_argument(std::string(what) + ": size mismatch");
}
}  // namespace

Section covariant_dx(const Connection& c, const Section& phi) {
  const TorusGeometry& g = *c.geom;
  require_sites(g, phi.size(), "covariant_dx");
  Section out(g.sites());
  const double inv_h = 1.0 / g.h;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int s = g.site(ix, iy);
      out[s] = (c.transport(g.xlink(ix, iy)) * phi[g.site(ix + 1, iy)] - phi[s]) * inv_h;
    }
  return out;
}

Section covariant_dy(const Connection& c, const Section& phi) {
  const TorusGeometry& g = *c.geom;
  require_sites(g, phi.size(), "covariant_dy");
  Section out(g.sites());
  const double inv_h = 1.0 / g.h;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int s = g.site(ix, iy);
      out[s] = (c.transport(g.ylink(ix, iy)) * phi[g.site(ix, iy + 1)] - phi[s]) * inv_h;
    }
  return out;
}

Form01 dbar(const Connection& c, const Section& phi) {
  const TorusGeometry& g = *c.geom;
  require_sites(g, phi.size(), "dbar");
  Form01 out(g.sites());
  const double inv_2h = 0.5 / g.h;
  const std::complex<double> I(0.0, 1.0);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int s = g.site(ix, iy);
      const std::complex<double> dx =
          c.transport(g.xlink(ix, iy)) * phi[g.site(ix + 1, iy)] - phi[s];
      const std::complex<double> dy =
          c.transport(g.ylink(ix, iy)) * phi[g.site(ix, iy + 1)] - phi[s];
      out[s] = (dx + I * dy) * inv_2h;
    }
  return out;
}

Section dbar_adjoint(const Connection& c, const Form01& psi) {
  const TorusGeometry& g = *c.geom;
  require_sites(g, psi.size(), "dbar_adjoint");
  Section out(g.sites());
  const double inv_h = 1.0 / g.h;
  const std::complex<double> I(0.0, 1.0);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int s = g.site(ix, iy);
      const std::complex<double> ux = c.transport(g.xlink(ix - 1, iy));
      const std::complex<double> uy = c.transport(g.ylink(ix, iy - 1));
      out[s] = (std::conj(ux) * psi[g.site(ix - 1, iy)] -
                I * std::conj(uy) * psi[g.site(ix, iy - 1)] -
                (1.0 - I) * psi[s]) *
               inv_h;
    }
  return out;
}

double weitzenboeck_defect(const Connection& c, const Section& phi) {
  const TorusGeometry& g = *c.geom;
  require_sites(g, phi.size(), "weitzenboeck_defect");
  const double norm2 = g.h * g.h * phi.abs2().sum();
  if (norm2 == 0.0) {
    throw std::invalid_argument("weitzenboeck_defect: phi vanishes identically");
  }
  const Section dx = covariant_dx(c, phi);
  const Section dy = covariant_dy(c, phi);
  const double bochner = g.h * g.h * (dx.abs2().sum() + dy.abs2().sum());
  const Form01 psi = dbar(c, phi);
  const double dolbeault2 = 2.0 * (2.0 * g.h * g.h * psi.abs2().sum());
  const Cochain2 iF = curvature_scalar(c);
  const double curv_term = g.h * g.h * (iF * phi.abs2()).sum();
  return std::abs(bochner - dolbeault2 - curv_term) / norm2;
}

}  // namespace vortex
