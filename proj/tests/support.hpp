#pragma once

#include <random>
#include <vector>

#include "nrefl/gaudin.hpp"
#include "nrefl/sampling.hpp"
#include "nrefl/spin.hpp"

namespace testing_support {

using nrefl::Scalar;
using nrefl::SpinPoly;

inline Scalar q(long p, long d = 1) { return Scalar::ratio(p, d); }

/// Random element of Q(zeta_N) with small rational coefficients, never zero.
inline Scalar random_cyclotomic(nrefl::Sampler& s, int order) {
  for (;;) {
    std::vector<nrefl::Rational> c;
    for (int k = 0; k < nrefl::euler_phi(order); ++k) c.push_back(s.next_rational());
    Scalar v(nrefl::Cyclotomic(order, c));
    if (!v.is_zero()) return v;
  }
}

/// Random quadratic (degree <= 2, constant term included) polynomial in the spin
/// variables of `sites` sites.
inline SpinPoly random_quadratic(std::mt19937_64& rng, int sites, int terms = 6) {
  const int vars = 3 * sites;
  std::uniform_int_distribution<int> var(0, vars - 1), deg(0, 2), coef(-9, 9);
  SpinPoly p;
  for (int t = 0; t < terms; ++t) {
    SpinPoly m(coef(rng));
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      const int v = var(rng);
      m *= SpinPoly::gen(v / 3 + 1, static_cast<nrefl::Spin>(v % 3));
    }
    p += m;
  }
  return p;
}

}  // namespace testing_support
