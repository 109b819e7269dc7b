#include "vortex/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vortex {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_size(const Eigen::Index got, const Eigen::Index want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": size mismatch, got " +
                                std::to_string(got) + ", expected " + std::to_string(want));
  }
}
}  // namespace

TorusGeometry build_torus(int n, double vol) {
  if (n < 4) {
    throw std::invalid_argument("build_torus: n must be >= 4 (degenerate stencils), got " +
                                std::to_string(n));
  }
  if (!(vol > 0.0)) {
    throw std::invalid_argument("build_torus: vol must be positive, got " + std::to_string(vol));
  }
  TorusGeometry g;
  g.n = n;
  g.vol = vol;
  g.h = std::sqrt(vol) / n;
  g.side = g.h * n;
  return g;
}

double reduce_angle(double x) { return x - kTwoPi * std::ceil(x / kTwoPi - 0.5); }

double wrap_to_cell(double x, double q) { return x - q * std::ceil(x / q - 0.5); }

Cochain1 d0(const TorusGeometry& g, const Cochain0& f) {
  require_size(f.size(), g.sites(), "d0");
  const int n = g.n;
  Cochain1 out(g.links());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int s = g.site(ix, iy);
      out[g.xlink(ix, iy)] = f[g.site(ix + 1, iy)] - f[s];
      out[g.ylink(ix, iy)] = f[g.site(ix, iy + 1)] - f[s];
    }
  return out;
}

Cochain2 d1(const TorusGeometry& g, const Cochain1& a) {
  require_size(a.size(), g.links(), "d1");
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  Cochain2 out(g.plaquettes());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double circ = a[g.xlink(ix, iy)] + a[g.ylink(ix + 1, iy)] -
                          a[g.xlink(ix, iy + 1)] - a[g.ylink(ix, iy)];
      out[g.plaq(ix, iy)] = circ * inv_h2;
    }
  return out;
}

Cochain0 d0_adjoint(const TorusGeometry& g, const Cochain1& a) {
  require_size(a.size(), g.links(), "d0_adjoint");
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  Cochain0 out(g.sites());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      out[g.site(ix, iy)] = (a[g.xlink(ix - 1, iy)] - a[g.xlink(ix, iy)] +
                             a[g.ylink(ix, iy - 1)] - a[g.ylink(ix, iy)]) *
                            inv_h2;
    }
  return out;
}

Cochain1 d1_adjoint(const TorusGeometry& g, const Cochain2& w) {
  require_size(w.size(), g.plaquettes(), "d1_adjoint");
  const int n = g.n;
  Cochain1 out(g.links());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      out[g.xlink(ix, iy)] = w[g.plaq(ix, iy)] - w[g.plaq(ix, iy - 1)];
      out[g.ylink(ix, iy)] = w[g.plaq(ix - 1, iy)] - w[g.plaq(ix, iy)];
    }
  return out;
}

double ip0(const TorusGeometry& g, const Cochain0& f, const Cochain0& gg) {
  require_size(f.size(), g.sites(), "ip0");
  require_size(gg.size(), g.sites(), "ip0");
  return g.h * g.h * (f * gg).sum();
}

double ip1(const TorusGeometry& g, const Cochain1& a, const Cochain1& b) {
  require_size(a.size(), g.links(), "ip1");
  require_size(b.size(), g.links(), "ip1");
  return (a * b).sum();
}

double ip2(const TorusGeometry& g, const Cochain2& w, const Cochain2& v) {
  require_size(w.size(), g.plaquettes(), "ip2");
  require_size(v.size(), g.plaquettes(), "ip2");
  return g.h * g.h * (w * v).sum();
}

std::complex<double> ip01(const TorusGeometry& g, const Form01& s, const Form01& t) {
  require_size(s.size(), g.sites(), "ip01");
  require_size(t.size(), g.sites(), "ip01");
  return 2.0 * g.h * g.h * (s * t.conjugate()).sum();
}

Eigen::Vector2d harmonic_part(const TorusGeometry& g, const Cochain1& a) {
  require_size(a.size(), g.links(), "harmonic_part");
  const int n2 = g.sites();
  return {a.head(n2).mean(), a.tail(n2).mean()};
}

Cochain1 harmonic_reconstruct(const TorusGeometry& g, const Eigen::Vector2d& c) {
  Cochain1 out(g.links());
  out.head(g.sites()) = c[0];
  out.tail(g.sites()) = c[1];
  return out;
}

Cochain0 laplacian0(const TorusGeometry& g, const Cochain0& f) {
  require_size(f.size(), g.sites(), "laplacian0");
  const int n = g.n;
  const double inv_h2 = 1.0 / (g.h * g.h);
  Cochain0 out(g.sites());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      out[g.site(ix, iy)] = (4.0 * f[g.site(ix, iy)] - f[g.site(ix + 1, iy)] -
                             f[g.site(ix - 1, iy)] - f[g.site(ix, iy + 1)] -
                             f[g.site(ix, iy - 1)]) *
                            inv_h2;
    }
  return out;
}

namespace {

// Plain conjugate gradient for the (singular, but consistent) Poisson
// problems of the Hodge decomposition; the mean-zero constraint is kept by
// projecting the iterates.
template <typename ApplyOp>
Eigen::ArrayXd cg_mean_zero(const ApplyOp& apply, const Eigen::ArrayXd& rhs, double tol,
                            int maxit) {
  Eigen::ArrayXd x = Eigen::ArrayXd::Zero(rhs.size());
  Eigen::ArrayXd r = rhs - rhs.mean();
  Eigen::ArrayXd p = r;
  double rs = (r * r).sum();
  const double stop = tol * tol * rs;
  if (rs == 0.0) return x;
  for (int it = 0; it < maxit; ++it) {
    Eigen::ArrayXd ap = apply(p);
    const double alpha = rs / (p * ap).sum();
    x += alpha * p;
    r -= alpha * ap;
    const double rs_new = (r * r).sum();
    if (rs_new <= stop) break;
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  return x - x.mean();
}

}  // namespace

HodgeParts hodge_decompose(const TorusGeometry& g, const Cochain1& a, double cg_tol,
                           int cg_maxit) {
  require_size(a.size(), g.links(), "hodge_decompose");
  HodgeParts parts;
  // Exact part: d0* d0 f = d0* a.
  parts.f = cg_mean_zero([&](const Cochain0& v) { return laplacian0(g, v); },
                         Cochain0(d0_adjoint(g, a)), cg_tol, cg_maxit);
  // Coexact part: d1 d1* w = d1 a.
  parts.w = cg_mean_zero([&](const Cochain2& v) { return Cochain2(d1(g, d1_adjoint(g, v))); },
                         Cochain2(d1(g, a)), cg_tol, cg_maxit);
  parts.harmonic = harmonic_part(g, a);
  return parts;
}

}  // namespace vortex
