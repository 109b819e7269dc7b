// Lattice geometry and discrete Hodge operators.  The named constants were
// frozen from tests/oracles/gen_oracles.py (an independent NumPy
// implementation of the same defining formulas); tolerances on them cover
// floating-point reassociation only.

#include <cmath>

#include "doctest.h"
#include "vortex/geometry.hpp"
#include "vortex/rng.hpp"

using namespace vortex;

namespace {

// O1 fields: f(s) = sin(0.3 + 1.7 ix - 0.9 iy), a(l) = cos(0.2 + 0.55 l),
// w(p) = sin(0.8 + 0.35 p) on the n = 4, vol = 16 torus (h = 1).
Cochain0 o1_f(const TorusGeometry& g) {
  Cochain0 f(g.sites());
  for (int s = 0; s < g.sites(); ++s)
    f[s] = std::sin(0.3 + 1.7 * g.ix_of(s) - 0.9 * g.iy_of(s));
  return f;
}
Cochain1 o1_a(const TorusGeometry& g) {
  Cochain1 a(g.links());
  for (int l = 0; l < g.links(); ++l) a[l] = std::cos(0.2 + 0.55 * l);
  return a;
}
Cochain2 o1_w(const TorusGeometry& g) {
  Cochain2 w(g.plaquettes());
  for (int p = 0; p < g.plaquettes(); ++p) w[p] = std::sin(0.8 + 0.35 * p);
  return w;
}

Cochain1 random_cochain1(const TorusGeometry& g, std::uint64_t seed) {
  Rng rng(seed);
  Cochain1 a(g.links());
  for (int l = 0; l < g.links(); ++l) a[l] = rng.normal();
  return a;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("torus construction and index maps") {
  TorusGeometry g = build_torus(4, 16.0);
  CHECK(g.h == doctest::Approx(1.0));
  CHECK(g.side == doctest::Approx(4.0));
  CHECK(g.sites() == 16);
  CHECK(g.links() == 32);
  CHECK(g.plaquettes() == 16);
  CHECK(g.site(1, 2) == 9);
  CHECK(g.site(-1, 2) == 11);   // periodic wrap
  CHECK(g.site(4, 4) == 0);
  CHECK(g.xlink(1, 2) == 9);
  CHECK(g.ylink(1, 2) == 25);
  CHECK(g.ix_of(9) == 1);
  CHECK(g.iy_of(9) == 2);
  CHECK(g.x_of(9) == doctest::Approx(1.0));
  CHECK(g.y_of(9) == doctest::Approx(2.0));

  CHECK_THROWS_AS(build_torus(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_torus(4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_torus(4, -2.0), std::invalid_argument);
}

TEST_CASE("angle reduction and cell wrap") {
  const double pi = 3.14159265358979323846;
  CHECK(reduce_angle(0.3) == doctest::Approx(0.3));
  CHECK(reduce_angle(pi) == doctest::Approx(pi));          // branch lands at +pi
  CHECK(reduce_angle(-pi) == doctest::Approx(pi));
  CHECK(reduce_angle(1.5 * pi) == doctest::Approx(-0.5 * pi));
  CHECK(reduce_angle(2 * pi) == doctest::Approx(0.0));
  CHECK(wrap_to_cell(0.6, 1.0) == doctest::Approx(-0.4));
  CHECK(wrap_to_cell(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(wrap_to_cell(-0.5, 1.0) == doctest::Approx(0.5));
  CHECK(wrap_to_cell(3.2, 1.0) == doctest::Approx(0.2));
}

TEST_CASE("differentials match the independent reference") {
  TorusGeometry g = build_torus(4, 16.0);
  const Cochain0 f = o1_f(g);
  const Cochain1 a = o1_a(g);
  const Cochain2 w = o1_w(g);

  CHECK(f[5] == doctest::Approx(0.8912073600614354).epsilon(1e-13));

  const Cochain1 df = d0(g, f);
  CHECK(df[g.xlink(1, 1)] == doctest::Approx(-0.5562192099055303).epsilon(1e-13));
  CHECK(df[g.ylink(2, 3)] == doctest::Approx(-1.3713071257163891).epsilon(1e-13));

  CHECK(d1(g, a)[g.plaq(1, 2)] == doctest::Approx(-0.6001394557670229).epsilon(1e-13));
  CHECK(d0_adjoint(g, a)[5] == doctest::Approx(-1.4327317910156459).epsilon(1e-13));

  const Cochain1 dw = d1_adjoint(g, w);
  CHECK(dw[5] == doctest::Approx(-0.355080222869104).epsilon(1e-13));
  CHECK(dw[g.ylink(2, 3)] == doctest::Approx(-0.2528346132545175).epsilon(1e-13));

  const Eigen::Vector2d hp = harmonic_part(g, a);
  CHECK(hp[0] == doctest::Approx(0.08274093902051582).epsilon(1e-13));
  CHECK(hp[1] == doctest::Approx(-0.18572796924390786).epsilon(1e-13));
}

TEST_CASE("d1 after d0 vanishes") {
  for (int n : {4, 8, 16}) {
    TorusGeometry g = build_torus(n, 7.3);
    Rng rng(11 + n);
    Cochain0 f(g.sites());
    for (int s = 0; s < g.sites(); ++s) f[s] = rng.normal();
    CHECK(d1(g, d0(g, f)).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("codifferentials are exact adjoints") {
  TorusGeometry g = build_torus(8, 5.0);
  Rng rng(3);
  Cochain0 f(g.sites());
  Cochain2 w(g.plaquettes());
  for (int s = 0; s < g.sites(); ++s) f[s] = rng.normal();
  for (int p = 0; p < g.plaquettes(); ++p) w[p] = rng.normal();
  const Cochain1 a = random_cochain1(g, 4);

  const double lhs0 = ip1(g, d0(g, f), a);
  const double rhs0 = ip0(g, f, d0_adjoint(g, a));
  CHECK(lhs0 == doctest::Approx(rhs0).epsilon(1e-10));

  const double lhs1 = ip2(g, d1(g, a), w);
  const double rhs1 = ip1(g, a, d1_adjoint(g, w));
  CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-10));
}

TEST_CASE("laplacian0 equals d0_adjoint after d0") {
  TorusGeometry g = build_torus(8, 3.7);
  Rng rng(5);
  Cochain0 f(g.sites());
  for (int s = 0; s < g.sites(); ++s) f[s] = rng.normal();
  CHECK((laplacian0(g, f) - d0_adjoint(g, d0(g, f))).abs().maxCoeff() < 1e-12);
}

TEST_CASE("harmonic projection and reconstruction") {
  TorusGeometry g = build_torus(8, 2.0);
  const Cochain1 c = harmonic_reconstruct(g, Eigen::Vector2d(0.7, -0.2));
  const Eigen::Vector2d back = harmonic_part(g, c);
  CHECK(back[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(back[1] == doctest::Approx(-0.2).epsilon(1e-14));

  // exact 1-forms have no harmonic component
  Rng rng(9);
  Cochain0 f(g.sites());
  for (int s = 0; s < g.sites(); ++s) f[s] = rng.normal();
  const Eigen::Vector2d he = harmonic_part(g, d0(g, f));
  CHECK(std::abs(he[0]) < 1e-13);
  CHECK(std::abs(he[1]) < 1e-13);
}

TEST_CASE("hodge decomposition reassembles and separates") {
  TorusGeometry g = build_torus(12, 6.0);
  const Cochain1 a = random_cochain1(g, 21);
  const HodgeParts parts = hodge_decompose(g, a);

  const Cochain1 back =
      d0(g, parts.f) + d1_adjoint(g, parts.w) + harmonic_reconstruct(g, parts.harmonic);
  CHECK((back - a).abs().maxCoeff() < 1e-8);

  // mean-zero representatives
  CHECK(std::abs(parts.f.mean()) < 1e-10);
  CHECK(std::abs(parts.w.mean()) < 1e-10);

  // the three pieces are mutually orthogonal
  const Cochain1 ex = d0(g, parts.f);
  const Cochain1 co = d1_adjoint(g, parts.w);
  const Cochain1 ha = harmonic_reconstruct(g, parts.harmonic);
  CHECK(std::abs(ip1(g, ex, co)) < 1e-8);
  CHECK(std::abs(ip1(g, ex, ha)) < 1e-8);
  CHECK(std::abs(ip1(g, co, ha)) < 1e-8);
}

}  // TEST_SUITE
