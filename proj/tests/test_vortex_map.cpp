// Vortex residual map and its linearization: frozen reference values,
// structural identities, gauge behavior, and derivative consistency.
// Frozen constants from tests/oracles/gen_oracles.py.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "vortex/rng.hpp"
#include "vortex/vortex_map.hpp"

using namespace vortex;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::complex<double> kI{0.0, 1.0};

Section o3_phi(const TorusGeometry& g) {
  Section phi(g.sites());
  for (int s = 0; s < g.sites(); ++s)
    phi[s] = std::exp(kI * (0.2 + 0.45 * s)) * (1.0 + 0.1 * std::cos(double(s)));
  return phi;
}

// Random state with smooth-ish amplitudes, away from branch cuts and cell
// boundaries so the residual is smooth in a neighborhood.
void random_state(const TorusGeometry& g, std::uint64_t seed, Section& phi, Cochain1& alpha) {
  Rng rng(seed);
  phi.resize(g.sites());
  alpha.resize(g.links());
  for (int s = 0; s < g.sites(); ++s) phi[s] = {0.7 * rng.normal(), 0.7 * rng.normal()};
  for (int l = 0; l < g.links(); ++l) alpha[l] = 0.1 * rng.normal();
}

}  // namespace

TEST_SUITE("vortex-map") {

TEST_CASE("residual matches the reference at an explicit state") {
  TorusGeometry g = build_torus(4, 16.0);
  Connection c = base_connection(g, 1);
  for (int l = 0; l < g.links(); ++l) c.alpha[l] = 0.05 * std::cos(0.7 + 0.21 * l);
  const Section phi = o3_phi(g);

  const VortexResidual r = residual(c, phi, 0.8);
  CHECK(r.b[0] == doctest::Approx(0.552047204087695).epsilon(1e-13));
  CHECK(r.b[9] == doctest::Approx(0.39801564669266704).epsilon(1e-13));
  CHECK(r.h[0] == doctest::Approx(-0.01918912570326379).epsilon(1e-12));
  CHECK(r.h[1] == doctest::Approx(0.02362767973981136).epsilon(1e-12));
  CHECK(r.gauge[5] == doctest::Approx(-0.030313950164668643).epsilon(1e-12));
  CHECK(r.total_norm() == doctest::Approx(5.293230980420947).epsilon(1e-13));
  CHECK(r.b_integral() == doctest::Approx(7.995367911435656).epsilon(1e-13));
}

TEST_CASE("the b-block integral identity is exact") {
  // h^2 sum b = 2 pi d - (tau vol - ||phi||^2)/2 to rounding, for any state
  TorusGeometry g = build_torus(8, 10.0);
  for (int d : {0, 1, 3}) {
    Connection c = base_connection(g, d);
    Section phi;
    Cochain1 alpha;
    random_state(g, 55 + d, phi, alpha);
    c.alpha = alpha;
    const double tau = 0.9;
    const VortexResidual r = residual(c, phi, tau);
    const double phi2 = g.h * g.h * phi.abs2().sum();
    CHECK(r.b_integral() ==
          doctest::Approx(2 * kPi * d - 0.5 * (tau * g.vol - phi2)).epsilon(1e-12));
  }
}

TEST_CASE("exact zeros of the residual") {
  // trivial bundle, phi = sqrt(tau): every block vanishes identically
  TorusGeometry g = build_torus(8, 4.0);
  Connection c = base_connection(g, 0);
  const VortexResidual r0 = residual(c, Section::Ones(g.sites()), 1.0);
  CHECK(r0.total_norm() < 1e-14);

  // degree 1 at the critical volume: phi = 0, alpha = 0 solves exactly
  TorusGeometry g1 = build_torus(8, 4 * kPi);
  Connection c1 = base_connection(g1, 1);
  const VortexResidual r1 = residual(c1, Section::Zero(g1.sites()), 1.0);
  CHECK(r1.total_norm() < 1e-14);

  // below the critical volume the b block is the constant deficit
  TorusGeometry g2 = build_torus(8, 8 * kPi);
  Connection c2 = base_connection(g2, 1);
  const VortexResidual r2 = residual(c2, Section::Zero(g2.sites()), 1.0);
  CHECK((r2.b + 0.25).abs().maxCoeff() < 1e-14);  // 2 pi/(8 pi) - 1/2 = -1/4
}

TEST_CASE("stacked vector realizes the weighted norm") {
  TorusGeometry g = build_torus(8, 7.0);
  Connection c = base_connection(g, 2);
  Section phi;
  Cochain1 alpha;
  random_state(g, 77, phi, alpha);
  c.alpha = alpha;
  const VortexResidual r = residual(c, phi, 1.1);
  const Eigen::VectorXd v = r.stacked();
  CHECK(v.size() == 4 * g.sites() + 2);
  CHECK(v.norm() == doctest::Approx(r.total_norm()).epsilon(1e-13));
  CHECK(v.squaredNorm() == doctest::Approx(r.psi_norm_sq() + r.b_norm_sq() + r.h_norm_sq() +
                                           r.gauge_norm_sq())
                               .epsilon(1e-13));
}

TEST_CASE("state packing round-trips") {
  TorusGeometry g = build_torus(8, 3.0);
  Section phi, phi2;
  Cochain1 alpha, alpha2;
  random_state(g, 3, phi, alpha);
  const Eigen::VectorXd x = pack_state(g, phi, alpha);
  CHECK(x.size() == 4 * g.sites());
  unpack_state(g, x, phi2, alpha2);
  CHECK((phi - phi2).abs().maxCoeff() == 0.0);
  CHECK((alpha - alpha2).abs().maxCoeff() == 0.0);
}

TEST_CASE("residual blocks are gauge invariant in norm") {
  // psi transforms by a phase, b and h are untouched, so their norms are
  // invariant under every gauge transformation; the gauge-fixing block is
  // invariant under the harmonic subgroup (constant f + windings) only.
  TorusGeometry g = build_torus(12, 9.0);
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    Connection c = base_connection(g, 1);
    Section phi;
    Cochain1 alpha;
    random_state(g, 1000 + trial, phi, alpha);
    c.alpha = alpha;
    const VortexResidual r = residual(c, phi, 1.0);

    Cochain0 f(g.sites());
    for (int s = 0; s < g.sites(); ++s) f[s] = 0.2 * rng.normal();
    GaugeTransformation u{f, int(rng.next_u64() % 5) - 2, int(rng.next_u64() % 5) - 2};
    gauge_transform(u, phi, c);
    const VortexResidual rt = residual(c, phi, 1.0);

    CHECK(std::abs(std::sqrt(rt.psi_norm_sq()) - std::sqrt(r.psi_norm_sq())) < 1e-9);
    CHECK(std::abs(std::sqrt(rt.b_norm_sq()) - std::sqrt(r.b_norm_sq())) < 1e-9);
    CHECK(std::abs(std::sqrt(rt.h_norm_sq()) - std::sqrt(r.h_norm_sq())) < 1e-9);
    // pointwise equivariance of the section block: |psi'| = |psi|
    CHECK((rt.psi.abs() - r.psi.abs()).abs().maxCoeff() < 1e-12);
  }

  // harmonic transformations leave all four blocks invariant
  Connection c = base_connection(g, 1);
  Section phi;
  Cochain1 alpha;
  random_state(g, 2000, phi, alpha);
  c.alpha = alpha;
  const VortexResidual r = residual(c, phi, 1.0);
  GaugeTransformation u{Cochain0::Constant(g.sites(), 0.37), 2, -1};
  gauge_transform(u, phi, c);
  const VortexResidual rt = residual(c, phi, 1.0);
  CHECK(std::abs(rt.total_norm() - r.total_norm()) < 1e-9);
  CHECK(std::abs(std::sqrt(rt.gauge_norm_sq()) - std::sqrt(r.gauge_norm_sq())) < 1e-12);
}

TEST_CASE("matrix-free apply agrees with the dense assembly") {
  TorusGeometry g = build_torus(6, 5.0);
  Connection c = base_connection(g, 1);
  Section phi;
  Cochain1 alpha;
  random_state(g, 8, phi, alpha);
  c.alpha = alpha;
  Linearization lin(c, phi, 0.9);
  const Eigen::MatrixXd J = lin.assemble();
  CHECK(J.rows() == lin.rows());
  CHECK(J.cols() == lin.cols());

  Rng rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd v(lin.cols());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
    CHECK((lin.apply(v) - J * v).norm() < 1e-12 * J.norm());
    Eigen::VectorXd w(lin.rows());
    for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
    CHECK((lin.apply_transpose(w) - J.transpose() * w).norm() < 1e-12 * J.norm());
  }

  // diagonal of the normal matrix
  const Eigen::VectorXd diag = lin.normal_diagonal();
  const Eigen::VectorXd dense_diag = (J.transpose() * J).diagonal();
  CHECK((diag - dense_diag).cwiseAbs().maxCoeff() < 1e-11 * dense_diag.maxCoeff());
}

TEST_CASE("transpose is the exact adjoint of apply") {
  TorusGeometry g = build_torus(8, 12.0);
  Connection c = base_connection(g, 2);
  Section phi;
  Cochain1 alpha;
  random_state(g, 31, phi, alpha);
  c.alpha = alpha;
  Linearization lin(c, phi, 1.3);
  Rng rng(32);
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd v(lin.cols()), w(lin.rows());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
    for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
    const double a = lin.apply(v).dot(w);
    const double b = v.dot(lin.apply_transpose(w));
    CHECK(a == doctest::Approx(b).epsilon(1e-11));
  }
}

TEST_CASE("finite differences confirm the derivative to second order") {
  // || F(x + eps v) - F(x) - eps J v || = O(eps^2): the ratio of errors at
  // eps = 1e-4 and 1e-5 is 100 up to higher-order terms.
  TorusGeometry g = build_torus(8, 6.0);
  for (int trial = 0; trial < 5; ++trial) {
    Connection c = base_connection(g, 1);
    Section phi;
    Cochain1 alpha;
    random_state(g, 400 + trial, phi, alpha);
    c.alpha = alpha;
    const double tau = 1.0;
    Linearization lin(c, phi, tau);

    Rng rng(500 + trial);
    Eigen::VectorXd v(lin.cols());
    for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
    v.normalize();

    const Eigen::VectorXd f0 = residual(c, phi, tau).stacked();
    const Eigen::VectorXd jv = lin.apply(v);
    const Eigen::VectorXd x0 = pack_state(g, phi, alpha);

    auto fd_error = [&](double eps) {
      Section phi_e;
      Cochain1 alpha_e;
      unpack_state(g, x0 + eps * v, phi_e, alpha_e);
      Connection ce = base_connection(g, 1);
      ce.alpha = alpha_e;
      return (residual(ce, phi_e, tau).stacked() - f0 - eps * jv).norm();
    };
    const double ratio = fd_error(1e-4) / fd_error(1e-5);
    CHECK(ratio > 80.0);
    CHECK(ratio < 120.0);
  }
}

TEST_CASE("pure-gauge directions at an exact zero") {
  // at a residual zero the derivative kills gauge directions in every block
  // except the gauge-fixing one; constant f lies in that block's kernel too.
  TorusGeometry g = build_torus(8, 4.0);
  Connection c = base_connection(g, 0);
  const Section phi = Section::Ones(g.sites());  // exact zero for tau = 1
  Linearization lin(c, phi, 1.0);

  auto gauge_direction = [&](const Cochain0& f) {
    Section dphi = (2.0 * kPi * kI) * (f.cast<std::complex<double>>() * phi);
    Cochain1 dalpha = -2.0 * kPi * d0(g, f);
    return pack_state(g, dphi, dalpha);
  };

  // constant f: the full derivative vanishes
  const Eigen::VectorXd jc = lin.apply(gauge_direction(Cochain0::Constant(g.sites(), 0.3)));
  CHECK(jc.norm() < 1e-10);

  // general f: all rows except the n^2 gauge-fixing rows vanish
  Rng rng(61);
  Cochain0 f(g.sites());
  for (int s = 0; s < g.sites(); ++s) f[s] = rng.normal();
  const Eigen::VectorXd jg = lin.apply(gauge_direction(f));
  const int gauge_rows_start = 3 * g.sites() + 2;
  CHECK(jg.head(gauge_rows_start).norm() < 1e-10);
  CHECK(jg.tail(g.sites()).norm() > 1e-2);  // the gauge-fixing block sees it
}

TEST_CASE("dense assembly is refused above the memory guard") {
  TorusGeometry g = build_torus(20, 4.0);
  Connection c = base_connection(g, 1);
  Linearization lin(c, Section::Zero(g.sites()), 1.0);
  CHECK_THROWS_AS(lin.assemble(), std::invalid_argument);
}

TEST_CASE("branch-crossing circulations are rejected") {
  TorusGeometry g = build_torus(4, 16.0);
  Connection c = base_connection(g, 0);
  c.alpha[g.xlink(0, 0)] = kPi;
  CHECK_THROWS_AS(residual(c, Section::Ones(g.sites()), 1.0), BranchCutError);
}

}  // TEST_SUITE
