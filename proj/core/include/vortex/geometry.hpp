#pragma once

// Discrete model of a flat square torus with Hodge-theoretic operators on
// 0-, 1- and 2-cochains.
//
// ---------------------------------------------------------------------------
// Conventions (fixed here once; every other module refers to this block)
// ---------------------------------------------------------------------------
// The torus is R^2 / (l Z)^2 with total area vol, sampled on an n x n grid,
// lattice spacing h = sqrt(vol)/n, side length l = n h.
//
// Indexing:
//   site    s = iy*n + ix                         (n^2 sites)
//   x-link  from (ix,iy) to (ix+1,iy): index s    (n^2 x-links, [0, n^2))
//   y-link  from (ix,iy) to (ix,iy+1): index n^2+s
//   plaquette P(s): the square with lower-left corner s
// All coordinates wrap periodically.
//
// Cochain storage:
//   Cochain0 : one real value per site (pointwise).
//   Cochain1 : one real value per oriented link, storing the LINE INTEGRAL of
//              the 1-form along the link (so gauge transformations act
//              exactly; a constant 1-form with coefficient c stores c*h).
//   Cochain2 : one real value per plaquette, storing the POINTWISE scalar
//              (curl / curvature density), i.e. circulation divided by the
//              plaquette area h^2.
//
// Differentials (forward differences):
//   (d0 f)_link      = f(head) - f(tail)                       (exact Stokes)
//   (d1 a)_P         = [a_bot + a_right - a_top - a_left]/h^2  (ccw curl)
//
// Inner products (these make discrete sums approximate continuum L^2 norms):
//   <f,g>_0 = h^2 * sum_sites f g
//   <a,b>_1 =       sum_links a b        (line-integral values carry h each)
//   <w,v>_2 = h^2 * sum_plaquettes w v
//   (0,1)-forms (complex, dzbar-components): <s,t> = 2 h^2 sum s conj(t),
//   the factor 2 being |dzbar|^2 = 2.
//
// Codifferentials are the exact adjoints under these inner products:
//   (d0* a)_s      = [a_x(s-x) - a_x(s) + a_y(s-y) - a_y(s)] / h^2
//   (d1* w)_x(s)   =  w(P(s)) - w(P(s-y))
//   (d1* w)_y(s)   =  w(P(s-x)) - w(P(s))
//
// Angle branch: reduce_angle wraps to (-pi, pi].
// ---------------------------------------------------------------------------

#include <Eigen/Dense>

namespace vortex {

using Cochain0 = Eigen::ArrayXd;
using Cochain1 = Eigen::ArrayXd;
using Cochain2 = Eigen::ArrayXd;
using Section = Eigen::ArrayXcd;  // complex scalar field phi, one value per site
using Form01 = Eigen::ArrayXcd;   // dzbar-coefficient of a (0,1)-form, per site

struct TorusGeometry {
  int n = 0;        // sites per side (>= 4)
  double vol = 0;   // total area
  double h = 0;     // lattice spacing sqrt(vol)/n
  double side = 0;  // n*h

  int sites() const { return n * n; }
  int links() const { return 2 * n * n; }
  int plaquettes() const { return n * n; }

  int wrap(int i) const {
    int m = i % n;
    return m < 0 ? m + n : m;
  }
  int site(int ix, int iy) const { return wrap(iy) * n + wrap(ix); }
  int xlink(int ix, int iy) const { return site(ix, iy); }
  int ylink(int ix, int iy) const { return n * n + site(ix, iy); }
  int plaq(int ix, int iy) const { return site(ix, iy); }

  int ix_of(int s) const { return s % n; }
  int iy_of(int s) const { return s / n; }
  double x_of(int s) const { return (s % n) * h; }
  double y_of(int s) const { return (s / n) * h; }
};

// Reject n < 4 (degenerate stencils) and vol <= 0.
TorusGeometry build_torus(int n, double vol);

// Wrap an angle to (-pi, pi].
double reduce_angle(double x);

// Wrap x into the cell (-q/2, q/2].
double wrap_to_cell(double x, double q);

Cochain1 d0(const TorusGeometry& g, const Cochain0& f);
Cochain2 d1(const TorusGeometry& g, const Cochain1& a);
Cochain0 d0_adjoint(const TorusGeometry& g, const Cochain1& a);
Cochain1 d1_adjoint(const TorusGeometry& g, const Cochain2& w);

double ip0(const TorusGeometry& g, const Cochain0& f, const Cochain0& gg);
double ip1(const TorusGeometry& g, const Cochain1& a, const Cochain1& b);
double ip2(const TorusGeometry& g, const Cochain2& w, const Cochain2& v);
// Hermitian inner product of (0,1)-forms, linear in the first argument.
std::complex<double> ip01(const TorusGeometry& g, const Form01& s, const Form01& t);

// Coefficients (c_x, c_y) of the projection onto the two constant link modes
// (the harmonic 1-forms of the flat torus), in stored line-integral units:
// c_x = mean of x-link values, c_y = mean of y-link values.
Eigen::Vector2d harmonic_part(const TorusGeometry& g, const Cochain1& a);
Cochain1 harmonic_reconstruct(const TorusGeometry& g, const Eigen::Vector2d& c);

// Scalar Laplacian d0* d0 (positive semidefinite; kernel = constants).
Cochain0 laplacian0(const TorusGeometry& g, const Cochain0& f);

// Discrete Hodge decomposition a = d0 f + d1* w + harmonic, computed by two
// conjugate-gradient Poisson solves. f and w are mean-zero representatives.
struct HodgeParts {
  Cochain0 f;
  Cochain2 w;
  Eigen::Vector2d harmonic;
};
HodgeParts hodge_decompose(const TorusGeometry& g, const Cochain1& a,
                           double cg_tol = 1e-13, int cg_maxit = 100000);

}  // namespace vortex
