#pragma once

// Numerical index computations for the linearized vortex operator.
//
// The linearization at any state splits (up to compact/zeroth-order terms that
// cannot change an index) into a complex dbar block acting on sections and a
// real block acting on 1-forms.  A raw thresholded SVD of the assembled
// rectangular Jacobian cannot recover the analytic index: whenever the
// singular values separate cleanly, (dim ker - dim coker) collapses to
// (#cols - #rows), a constant of the discretization rather than of the bundle.
// We therefore compute the two blocks' indices by mechanisms that are
// topologically protected on the lattice:
//
//  * dbar block: the overlap construction.  From the Wilson-Dirac operator
//    D_W coupled to the bundle transports, form X = D_W - rho/h and the
//    unitary W = X (X^H X)^{-1/2}.  Exact zero modes of the overlap operator
//    (rho/h)(1 + W) are eigenvectors of W at -1; their chirality signs give
//    (n_plus, n_minus) with n_plus - n_minus equal to the bundle degree, and
//    the complex dbar index is recovered with its kernel/cokernel split.
//  * 1-form block alpha -> (-d alpha, h-coefficients, d* alpha): computed by
//    SVD on the honest quotient spaces (the d*-target modulo constants),
//    where it is injective with 1-dimensional cokernel, hence index -1.
//
// The real index of the full operator is then 2*(complex index) - 1.

#include <Eigen/Dense>

#include "vortex/vortex_map.hpp"

namespace vortex {

// Dense Wilson-Dirac operator on 2-spinors with bundle transports, Wilson
// parameter r.  Spinor layout: component index fastest (row 2*site + c).
Eigen::MatrixXcd wilson_dirac(const Connection& c, double r = 1.0);

struct OverlapIndexResult {
  int n_plus = 0;        // zero modes of positive chirality
  int n_minus = 0;       // zero modes of negative chirality
  int complex_index = 0; // n_plus - n_minus
  double gap = 0.0;      // first kept / largest discarded overlap singular value
  Eigen::VectorXd singulars; // overlap singular values (rho/h)|1 + lambda|, ascending
};

// Overlap index of the dbar block.  Throws std::runtime_error("no clear
// spectral gap") when the zero/nonzero singular values are separated by less
// than 10^3; throws std::invalid_argument for n > 24 (dense spectral guard).
OverlapIndexResult overlap_index(const Connection& c, double wilson_r = 1.0,
                                 double rho = 1.0);

struct FixedPointResult {
  double sigma_min = 0.0; // smallest singular value of the 1-form block
  int cokernel_dim = 0;
  int kernel_dim = 0;
  int index = 0; // kernel_dim - cokernel_dim
};

// The 1-form block of the linearization at (phi, alpha) = (0, 0):
// alpha -> (-d1 alpha, harmonic coefficients, d0* alpha), in the weighted
// norms, with the d0* target expressed in an orthonormal basis of the
// mean-zero subspace so the count is taken modulo constants.
FixedPointResult one_form_block_analysis(const TorusGeometry& g);

// Convenience wrapper building the torus (unit-ish volume keeps the scales
// tame; the block is independent of d and of phi).
FixedPointResult fixed_point_analysis(int d, int n, double vol = 12.566370614359172);

// Real index of the assembled linearization: 2*(overlap complex index) + the
// 1-form block index (which is -1).
int numerical_index(const AssembledLinearization& lin);

}  // namespace vortex
