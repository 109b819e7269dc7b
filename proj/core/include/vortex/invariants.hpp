#pragma once

// Closed-form invariants: Riemann-Roch index data, the theta-divisor Chern
// coefficients of the index bundle, genus-0 group orders, and moduli
// dimensions of the solution-space trichotomy.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace vortex {

struct IndexData {
  int d = 0;
  int genus = 0;
  int complex_index = 0;  // d + 1 - genus
  int real_index = 0;     // 2 * complex_index - 1
};

// Index of dbar on a degree-d line bundle over a genus-g surface, plus the
// real index of the full linearized vortex operator.
IndexData riemann_roch(int d, int genus);

// Exact rational, numerator/denominator in lowest terms.
struct Rational {
  boost::multiprecision::cpp_int num = 0;
  boost::multiprecision::cpp_int den = 1;
  std::string str() const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

// Coefficient of theta^k in c_k of the index bundle: (-1)^k / k!, exact.
Rational chern_coefficient(int k);

struct GroupOrder {
  std::optional<int> order;  // nullopt = unknown (but finite)
  bool finite = true;
};

// Order of the genus-0 invariant group by degree: 1 for d < 0 and for
// d in {0, 2}; 2 for d = 1; unknown-but-finite for d >= 3.
GroupOrder genus0_group_order(int d);

enum class TauSign { below, equal, above };  // tau0 < tau, = tau, > tau

// Real dimension of the solution space: 2d (symmetric product), 2g (Picard
// torus), or -1 for the empty case.
int moduli_dimension(int d, int genus, TauSign sign);

}  // namespace vortex
