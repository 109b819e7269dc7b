#include "vortex/vortex_map.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vortex/covariant.hpp"

namespace vortex {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr std::complex<double> kI{0.0, 1.0};

// Vectorized link transports exp(i (base + alpha)).
void make_transports(const Connection& c, Eigen::ArrayXcd& ux, Eigen::ArrayXcd& uy) {
  const TorusGeometry& g = *c.geom;
  const int ns = g.sites();
  Eigen::ArrayXd ax = c.base_angles.head(ns) + c.alpha.head(ns);
  Eigen::ArrayXd ay = c.base_angles.tail(ns) + c.alpha.tail(ns);
  ux = ax.cos() + kI * ax.sin();
  uy = ay.cos() + kI * ay.sin();
}

// Plaquette circulation of the total angles, with the branch-ambiguity check
// of curvature_scalar.  Returns the reduced circulation per plaquette.
Cochain2 reduced_circulation_checked(const Connection& c) {
  const TorusGeometry& g = *c.geom;
  Cochain2 out(g.plaquettes());
  for (int s = 0; s < g.sites(); ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const double circ = c.angle(g.xlink(ix, iy)) + c.angle(g.ylink(ix + 1, iy)) -
                        c.angle(g.xlink(ix, iy + 1)) - c.angle(g.ylink(ix, iy));
    const double r = reduce_angle(circ);
    if (std::abs(std::abs(r) - kPi) < 1e-9) {
      throw BranchCutError("flux on a plaquette at branch cut boundary");
    }
    out[s] = r;
  }
  return out;
}

}  // namespace

Eigen::VectorXd VortexResidual::stacked() const {
  const int ns = geom->sites();
  const double hh = geom->h;
  Eigen::VectorXd r(4 * ns + 2);
  const double sq2h = std::sqrt(2.0) * hh;
  r.segment(0, ns) = sq2h * psi.real().matrix();
  r.segment(ns, ns) = sq2h * psi.imag().matrix();
  r.segment(2 * ns, ns) = hh * b.matrix();
  r.segment(3 * ns, 2) = std::sqrt(geom->vol) * h;
  r.segment(3 * ns + 2, ns) = hh * gauge.matrix();
  return r;
}

VortexResidual residual(const Connection& c, const Section& phi, double tau,
                        const Eigen::Vector2d& picard_target) {
  const TorusGeometry& g = *c.geom;
  const int ns = g.sites();
  if (phi.size() != ns) throw std::invalid_argument("residual: phi size mismatch");

  // Branch check only; the b block itself uses the exact-linear curvature
  // 2 pi d / vol - d1(alpha), so that sum(b) h^2 telescopes exactly.
  (void)reduced_circulation_checked(c);

  VortexResidual r;
  r.geom = &g;

  Eigen::ArrayXcd ux, uy;
  make_transports(c, ux, uy);

  const double h = g.h;
  r.psi.resize(ns);
  for (int s = 0; s < ns; ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const int sxp = g.site(ix + 1, iy), syp = g.site(ix, iy + 1);
    r.psi[s] = (ux[s] * phi[sxp] - phi[s] + kI * (uy[s] * phi[syp] - phi[s])) / (2.0 * h);
  }

  r.b = 2.0 * kPi * c.d / g.vol - d1(g, c.alpha) - 0.5 * (tau - phi.abs2());

  const double q = 2.0 * kPi / g.side;
  Eigen::Vector2d harm = harmonic_part(g, c.alpha) / h;
  r.h[0] = wrap_to_cell(harm[0] - picard_target[0], q);
  r.h[1] = wrap_to_cell(harm[1] - picard_target[1], q);

  r.gauge = d0_adjoint(g, c.alpha);
  return r;
}

Eigen::VectorXd pack_state(const TorusGeometry& g, const Section& phi, const Cochain1& alpha) {
  const int ns = g.sites();
  Eigen::VectorXd x(4 * ns);
  x.segment(0, ns) = phi.real().matrix();
  x.segment(ns, ns) = phi.imag().matrix();
  x.segment(2 * ns, 2 * ns) = alpha.matrix();
  return x;
}

void unpack_state(const TorusGeometry& g, const Eigen::VectorXd& x, Section& phi,
                  Cochain1& alpha) {
  const int ns = g.sites();
  if (x.size() != 4 * ns) throw std::invalid_argument("unpack_state: size mismatch");
  phi = x.segment(0, ns).array() + kI * x.segment(ns, ns).array();
  alpha = x.segment(2 * ns, 2 * ns).array();
}

Linearization::Linearization(const Connection& c, const Section& phi, double tau)
    : geom_(c.geom), conn_(c), phi_(phi), tau_(tau) {
  make_transports(conn_, ux_, uy_);
}

Eigen::VectorXd Linearization::apply(const Eigen::VectorXd& v) const {
  const TorusGeometry& g = *geom_;
  const int ns = g.sites();
  if (v.size() != cols()) throw std::invalid_argument("Linearization::apply: size mismatch");

  Section dphi;
  Cochain1 dalpha;
  unpack_state(g, v, dphi, dalpha);

  const double h = g.h;
  // d psi = dbar(dphi) + (i Ux(s) phi(s+x) dax(s) - Uy(s) phi(s+y) day(s)) / (2h)
  Form01 dpsi(ns);
  for (int s = 0; s < ns; ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const int sxp = g.site(ix + 1, iy), syp = g.site(ix, iy + 1);
    dpsi[s] = (ux_[s] * dphi[sxp] - dphi[s] + kI * (uy_[s] * dphi[syp] - dphi[s]) +
               kI * ux_[s] * phi_[sxp] * dalpha[s] - uy_[s] * phi_[syp] * dalpha[ns + s]) /
              (2.0 * h);
  }

  Cochain2 db = -d1(g, dalpha) + (phi_.conjugate() * dphi).real();
  Eigen::Vector2d dh = harmonic_part(g, dalpha) / h;
  Cochain0 dgauge = d0_adjoint(g, dalpha);

  Eigen::VectorXd out(rows());
  const double sq2h = std::sqrt(2.0) * h;
  out.segment(0, ns) = sq2h * dpsi.real().matrix();
  out.segment(ns, ns) = sq2h * dpsi.imag().matrix();
  out.segment(2 * ns, ns) = h * db.matrix();
  out.segment(3 * ns, 2) = std::sqrt(g.vol) * dh;
  out.segment(3 * ns + 2, ns) = h * dgauge.matrix();
  return out;
}

Eigen::VectorXd Linearization::apply_transpose(const Eigen::VectorXd& w) const {
  const TorusGeometry& g = *geom_;
  const int ns = g.sites();
  if (w.size() != rows()) {
    throw std::invalid_argument("Linearization::apply_transpose: size mismatch");
  }
  const double h = g.h;
  const double sq2h = std::sqrt(2.0) * h;

  Form01 W = w.segment(0, ns).array() + kI * w.segment(ns, ns).array();
  Cochain2 wb = w.segment(2 * ns, ns).array();
  Eigen::Vector2d wh = w.segment(3 * ns, 2);
  Cochain0 wg = w.segment(3 * ns + 2, ns).array();

  // phi gradient (complex): sq2h * (1/2) dbar^*(W) + h * phi * wb
  Section gphi = sq2h * 0.5 * dbar_adjoint(conn_, W) + h * (phi_ * wb);

  // alpha gradient:
  Cochain1 galpha = Cochain1::Zero(2 * ns);
  for (int s = 0; s < ns; ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const int sxp = g.site(ix + 1, iy), syp = g.site(ix, iy + 1);
    const std::complex<double> cw = std::conj(W[s]);
    galpha[s] += sq2h / (2.0 * h) * std::real(kI * ux_[s] * phi_[sxp] * cw);
    galpha[ns + s] += sq2h / (2.0 * h) * std::real(-uy_[s] * phi_[syp] * cw);
  }
  galpha += -(1.0 / h) * d1_adjoint(g, wb);
  const double hcoef = std::sqrt(g.vol) / (h * g.sites());
  galpha.head(ns) += hcoef * wh[0];
  galpha.tail(ns) += hcoef * wh[1];
  galpha += (1.0 / h) * d0(g, wg);

  Eigen::VectorXd out(cols());
  out.segment(0, ns) = gphi.real().matrix();
  out.segment(ns, ns) = gphi.imag().matrix();
  out.segment(2 * ns, 2 * ns) = galpha.matrix();
  return out;
}

Eigen::VectorXd Linearization::normal_diagonal() const {
  const TorusGeometry& g = *geom_;
  const int ns = g.sites();
  const double h = g.h;
  Eigen::VectorXd d(cols());
  for (int s = 0; s < ns; ++s) {
    const double re = phi_[s].real(), im = phi_[s].imag();
    d[s] = 2.0 + h * h * re * re;
    d[ns + s] = 2.0 + h * h * im * im;
  }
  const double link_base = 4.0 / (h * h) + 1.0 / double(ns);
  for (int s = 0; s < ns; ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const int sxp = g.site(ix + 1, iy), syp = g.site(ix, iy + 1);
    d[2 * ns + s] = 0.5 * std::norm(phi_[sxp]) + link_base;
    d[3 * ns + s] = 0.5 * std::norm(phi_[syp]) + link_base;
  }
  return d;
}

Eigen::MatrixXd Linearization::assemble() const {
  const TorusGeometry& g = *geom_;
  if (g.n > 16) {
    throw std::invalid_argument(
        "Linearization::assemble: dense assembly refused for n > 16 (use the "
        "matrix-free apply)");
  }
  Eigen::MatrixXd J(rows(), cols());
  Eigen::VectorXd e = Eigen::VectorXd::Zero(cols());
  for (int j = 0; j < cols(); ++j) {
    e[j] = 1.0;
    J.col(j) = apply(e);
    e[j] = 0.0;
  }
  return J;
}

AssembledLinearization assemble_linearization(const Connection& c, const Section& phi,
                                              double tau) {
  Linearization lin(c, phi, tau);
  return AssembledLinearization{lin.assemble(), c, phi, tau};
}

}  // namespace vortex
