#include "vortex/invariants.hpp"

#include <stdexcept>

namespace vortex {

IndexData riemann_roch(int d, int genus) {
  if (genus < 0) throw std::invalid_argument("riemann_roch: genus must be >= 0");
  IndexData x;
  x.d = d;
  x.genus = genus;
  x.complex_index = d + 1 - genus;
  x.real_index = 2 * x.complex_index - 1;
  return x;
}

std::string Rational::str() const {
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational chern_coefficient(int k) {
  if (k < 0) throw std::invalid_argument("chern_coefficient: k must be >= 0");
  Rational r;
  boost::multiprecision::cpp_int fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  r.num = (k % 2 == 0) ? 1 : -1;
  r.den = fact;
  return r;
}

GroupOrder genus0_group_order(int d) {
  GroupOrder g;
  g.finite = true;
  if (d < 0 || d == 0 || d == 2) {
    g.order = 1;
  } else if (d == 1) {
    g.order = 2;
  } else {
    g.order = std::nullopt;  // finite, value not tabulated
  }
  return g;
}

int moduli_dimension(int d, int genus, TauSign sign) {
  switch (sign) {
    case TauSign::below:
      return 2 * d;
    case TauSign::equal:
      return 2 * genus;
    case TauSign::above:
      return -1;
  }
  return -1;
}

}  // namespace vortex
