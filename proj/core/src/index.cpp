#include "vortex/index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx kI{0.0, 1.0};

// Pauli matrices; gamma_1 = s1, gamma_2 = s2, chirality = s3.
const Eigen::Matrix2cd& sigma1() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  return m;
}
const Eigen::Matrix2cd& sigma2() {
  static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, -kI, kI, 0).finished();
  return m;
}

// Orthonormal basis of the mean-zero subspace of R^m as the trailing m-1
// columns of the Householder reflection sending e0 to the constant unit
// vector; used to express d0* outputs modulo constants.
Eigen::MatrixXd mean_zero_basis(int m) {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
  Eigen::VectorXd v = -c;
  v[0] += 1.0;
  v.normalize();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(m, m) - 2.0 * v * v.transpose();
  return H.rightCols(m - 1);
}

}  // namespace

Eigen::MatrixXcd wilson_dirac(const Connection& c, double r) {
  const TorusGeometry& g = *c.geom;
  const int ns = g.sites();
  const double h = g.h;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2 * ns, 2 * ns);

  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd fwd_x = (sigma1() - r * id) / (2.0 * h);
  const Eigen::Matrix2cd bwd_x = (-sigma1() - r * id) / (2.0 * h);
  const Eigen::Matrix2cd fwd_y = (sigma2() - r * id) / (2.0 * h);
  const Eigen::Matrix2cd bwd_y = (-sigma2() - r * id) / (2.0 * h);

  for (int s = 0; s < ns; ++s) {
    const int ix = g.ix_of(s), iy = g.iy_of(s);
    const int sxp = g.site(ix + 1, iy), sxm = g.site(ix - 1, iy);
    const int syp = g.site(ix, iy + 1), sym = g.site(ix, iy - 1);
    const Cplx ux = c.transport(g.xlink(ix, iy));
    const Cplx uy = c.transport(g.ylink(ix, iy));
    const Cplx uxm = std::conj(c.transport(g.xlink(ix - 1, iy)));
    const Cplx uym = std::conj(c.transport(g.ylink(ix, iy - 1)));
    D.block<2, 2>(2 * s, 2 * sxp) += fwd_x * ux;
    D.block<2, 2>(2 * s, 2 * sxm) += bwd_x * uxm;
    D.block<2, 2>(2 * s, 2 * syp) += fwd_y * uy;
    D.block<2, 2>(2 * s, 2 * sym) += bwd_y * uym;
    D.block<2, 2>(2 * s, 2 * s) += (2.0 * r / h) * id;
  }
  return D;
}

OverlapIndexResult overlap_index(const Connection& c, double wilson_r, double rho) {
  const TorusGeometry& g = *c.geom;
  if (g.n > 24) {
    throw std::invalid_argument(
        "overlap_index: dense spectral computation refused for n > 24");
  }
  const int ns = g.sites();
  const double h = g.h;

  Eigen::MatrixXcd X = wilson_dirac(c, wilson_r);
  X.diagonal().array() -= rho / h;

  // Unitary part of the polar decomposition, W = U V^H.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd W = svd.matrixU() * svd.matrixV().adjoint();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(W, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("overlap_index: eigensolver failed");
  }
  const Eigen::VectorXcd lam = es.eigenvalues();
  const int dim = 2 * ns;

  // Overlap singular values (rho/h)|1 + lambda|, ascending.
  Eigen::VectorXd sig(dim);
  for (int i = 0; i < dim; ++i) sig[i] = (rho / h) * std::abs(1.0 + lam[i]);
  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });

  OverlapIndexResult res;
  res.singulars.resize(dim);
  for (int i = 0; i < dim; ++i) res.singulars[i] = sig[order[i]];

  const double smax = res.singulars[dim - 1];
  int nzero = 0;
  while (nzero < dim && res.singulars[nzero] < 1e-8 * smax) ++nzero;

  if (nzero == 0) {
    res.gap = std::numeric_limits<double>::infinity();
    return res;
  }
  const double zero_max = res.singulars[nzero - 1];
  const double first_kept = nzero < dim ? res.singulars[nzero] : smax;
  res.gap = zero_max > 0.0 ? first_kept / zero_max
                           : std::numeric_limits<double>::infinity();
  if (res.gap < 1e3) {
    throw std::runtime_error("no clear spectral gap");
  }

  // Chirality split of the zero eigenspace: diagonalize sigma3 restricted to
  // span of the zero modes (robust under degenerate-eigenvector mixing).
  Eigen::MatrixXcd Z(dim, nzero);
  for (int k = 0; k < nzero; ++k) Z.col(k) = es.eigenvectors().col(order[k]);
  // Orthonormalize Z first (eigenvectors of a unitary are orthogonal in exact
  // arithmetic, but guard against roundoff).
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, nzero);
  Eigen::MatrixXcd S3Q(dim, nzero);
  for (int s = 0; s < ns; ++s) {
    S3Q.row(2 * s) = Q.row(2 * s);
    S3Q.row(2 * s + 1) = -Q.row(2 * s + 1);
  }
  Eigen::MatrixXcd C = Q.adjoint() * S3Q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ces(C);
  for (int k = 0; k < nzero; ++k) {
    const double chi = ces.eigenvalues()[k];
    if (chi > 0.5) {
      ++res.n_plus;
    } else if (chi < -0.5) {
      ++res.n_minus;
    } else {
      throw std::runtime_error("no clear spectral gap");
    }
  }
  res.complex_index = res.n_plus - res.n_minus;
  return res;
}

FixedPointResult one_form_block_analysis(const TorusGeometry& g) {
  const int ns = g.sites();
  const int nl = g.links();
  const double h = g.h;

  // Rows: n^2 curvature rows h*(-d1), 2 harmonic rows sqrt(vol)/h * mean,
  // n^2-1 gauge rows h*d0* in the mean-zero orthonormal basis.
  const int rows = ns + 2 + (ns - 1);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows, nl);

  Eigen::MatrixXd B = mean_zero_basis(ns);  // ns x (ns-1)
  Cochain1 e = Cochain1::Zero(nl);
  for (int j = 0; j < nl; ++j) {
    e[j] = 1.0;
    Cochain2 curv = -d1(g, e);
    Eigen::Vector2d harm = harmonic_part(g, e) / h;
    Cochain0 gauge = d0_adjoint(g, e);
    e[j] = 0.0;
    T.block(0, j, ns, 1) = h * curv.matrix();
    T.block(ns, j, 2, 1) = std::sqrt(g.vol) * harm;
    T.block(ns + 2, j, ns - 1, 1) = h * (B.transpose() * gauge.matrix());
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(T);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > 1e-8 * smax) ++rank;
  }
  FixedPointResult res;
  res.sigma_min = sv[sv.size() - 1];
  res.kernel_dim = nl - rank;
  res.cokernel_dim = rows - rank;
  res.index = res.kernel_dim - res.cokernel_dim;
  return res;
}

FixedPointResult fixed_point_analysis(int d, int n, double vol) {
  if (n > 16) {
    throw std::invalid_argument("fixed_point_analysis: n must be <= 16, got " +
                                std::to_string(n));
  }
  (void)d;  // the phi = 0 block does not see the bundle degree
  TorusGeometry g = build_torus(n, vol);
  return one_form_block_analysis(g);
}

int numerical_index(const AssembledLinearization& lin) {
  OverlapIndexResult ov = overlap_index(lin.conn);
  FixedPointResult fp = one_form_block_analysis(*lin.conn.geom);
  return 2 * ov.complex_index + fp.index;
}

}  // namespace vortex
