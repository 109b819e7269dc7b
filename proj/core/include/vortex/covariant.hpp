#pragma once

// Covariant difference operators twisted by a connection: the Cauchy-Riemann
// operator dbar = (D_x + i D_y)/2 on sections (forward differences), its
// adjoint under the weighted inner products of geometry.hpp, and the discrete
// defect of the curvature identity
//     (Bochner Laplacian) = 2 dbar* dbar + i*F
// relating the two covariant Laplacians.

#include "vortex/connection.hpp"

namespace vortex {

// Forward covariant differences D_mu phi = (U_mu phi(s+mu) - phi(s))/h.
Section covariant_dx(const Connection& c, const Section& phi);
Section covariant_dy(const Connection& c, const Section& phi);

// dbar phi = (D_x phi + i D_y phi)/2, the dzbar-component of the covariant
// (0,1)-derivative; reduces to the plain Cauchy-Riemann stencil for the
// trivial bundle.
Form01 dbar(const Connection& c, const Section& phi);

// Adjoint: <dbar phi, psi>_(0,1) = <phi, dbar_adjoint psi>_0 exactly.
Section dbar_adjoint(const Connection& c, const Form01& psi);

// | <Bochner phi, phi> - 2 <dbar*dbar phi, phi> - <i*F phi, phi> | / ||phi||^2
// with all three terms built from the same covariant differences, the
// curvature paired at the plaquette corner site.  Exactly zero for real phi
// on the trivial flat bundle; O(h) for smooth sampled data in general.
// Throws std::invalid_argument when phi vanishes identically.
double weitzenboeck_defect(const Connection& c, const Section& phi);

}  // namespace vortex
