#include <gtest/gtest.h>

#include <algorithm>

#include "nrefl/errors.hpp"
#include "nrefl/ratfun.hpp"
#include "nrefl/sampling.hpp"
#include "support.hpp"

using namespace nrefl;
using testing_support::q;
using RF = RatFun<Scalar>;

namespace {

RF simple_pole(const Scalar& root, int k = 1) { return RF::linear_inverse_power(Scalar(1), -root, k); }
RF poly(std::vector<Scalar> c) { return RF::polynomial(Poly<Scalar>(std::move(c))); }

}  // namespace

TEST(RatFun, ArithmeticExamples) {
  const RF sum = simple_pole(Scalar(1)) + simple_pole(Scalar(-1));
  EXPECT_EQ(sum, RF(Poly<Scalar>{Scalar(0), Scalar(2)}, {{Scalar(1), 1}, {Scalar(-1), 1}}));
  EXPECT_EQ(sum.poles().size(), 2u);

  const RF cancel = poly({Scalar(-1), Scalar(1)}) * simple_pole(Scalar(1));
  EXPECT_TRUE(cancel.denominator().empty());
  EXPECT_EQ(cancel, RF::constant(Scalar(1)));

  const RF sq = simple_pole(Scalar(2)) * simple_pole(Scalar(2));
  ASSERT_EQ(sq.denominator().size(), 1u);
  EXPECT_EQ(sq.multiplicity_at(Scalar(2)), 2);
  EXPECT_EQ(sq.eval(Scalar(4)), q(1, 4));
  EXPECT_THROW(sq.eval(Scalar(2)), PoleError);
  EXPECT_THROW(RF::constant(Scalar(1)).divided_by(Scalar(0)), DivisionByZero);
}

TEST(RatFun, ResidueExamples) {
  EXPECT_EQ(simple_pole(Scalar(1)).residue(Scalar(1)), Scalar(1));
  EXPECT_EQ((poly({Scalar(1), Scalar(1)}) * simple_pole(Scalar(0), 2)).residue(Scalar(0)), Scalar(1));
  const RF f = poly({Scalar(0), Scalar(1)}) * simple_pole(Scalar(2), 2) * simple_pole(Scalar(3));
  EXPECT_EQ(f.residue(Scalar(2)), Scalar(-3));
  EXPECT_EQ(f.residue(Scalar(3)), Scalar(3));
  // not a pole: zero where the numerator vanishes, an error otherwise
  EXPECT_EQ((poly({Scalar(-7), Scalar(1)}) * simple_pole(Scalar(2))).residue(Scalar(7)), Scalar(0));
  EXPECT_THROW(f.residue(Scalar(7)), PoleError);
  EXPECT_THROW(RF::constant(Scalar(1)).residue(Scalar(7)), PoleError);
}

// Oracle: build f from a known partial-fraction expansion
//   f = sum_i sum_k c_ik / (x - r_i)^k + polynomial,
// so res_{r_i} f = c_i1 and res_inf f = -sum_i c_i1.
TEST(RatFun, ResiduesMatchPartialFractionOracle) {
  Sampler s(21);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> roots;
    while (roots.size() < 3) {
      const Scalar r(s.next_rational());
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    RF f = poly({Scalar(s.next_rational()), Scalar(s.next_rational())});
    std::vector<Scalar> c1;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const int mult = 1 + static_cast<int>(i);
      Scalar first(0);
      for (int k = 1; k <= mult; ++k) {
        const Scalar c = Scalar(s.next_rational()) + Scalar(21);  // never zero
        if (k == 1) first = c;
        f += simple_pole(roots[i], k) * RF::constant(c);
      }
      c1.push_back(first);
    }
    Scalar total(0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_EQ(f.residue(roots[i]), c1[i]);
      total += c1[i];
    }
    EXPECT_EQ(f.residue_at_infinity(), -total);
  }
}

TEST(RatFun, ResidueTheoremOnRandomFunctions) {
  Sampler s(kDefaultSeed);
  for (int t = 0; t < 50; ++t) {
    // total degree <= 8: numerator degree <= 4, denominator degree <= 4
    std::vector<Scalar> num;
    for (int k = 0; k <= t % 5; ++k) num.push_back(Scalar(s.next_rational()));
    std::vector<LinearFactor> den;
    for (int k = 0; k < 1 + t % 3; ++k) den.push_back({Scalar(s.next_rational()), 1 + (k + t) % 2});
    const RF f(Poly<Scalar>(num), den, Scalar(s.next_rational()) + Scalar(21));
    Scalar sum = f.residue_at_infinity();
    for (const auto& r : f.poles()) sum += f.residue(r);
    EXPECT_TRUE(sum.is_zero()) << t;
  }
}

TEST(RatFun, ResidueIsLinear) {
  Sampler s(4);
  for (int t = 0; t < 20; ++t) {
    const Scalar r1(s.next_rational()), r2(s.next_rational() + 41);
    const RF f = poly({Scalar(s.next_rational()), Scalar(1)}) * simple_pole(r1, 2) * simple_pole(r2);
    const RF g = poly({Scalar(s.next_rational()), Scalar(0), Scalar(3)}) * simple_pole(r1) * simple_pole(r2, 2);
    const Scalar a(s.next_rational());
    EXPECT_EQ((f + g * RF::constant(a)).residue(r1), f.residue(r1) + a * g.residue(r1));
    EXPECT_EQ((f + g * RF::constant(a)).residue(r2), f.residue(r2) + a * g.residue(r2));
  }
}

TEST(RatFun, CyclotomicRoots) {
  const Scalar w = Scalar::zeta(3);
  const RF f = simple_pole(w) + simple_pole(w * w) + simple_pole(Scalar(1));
  // 1/(x-1) + 1/(x-w) + 1/(x-w^2) = 3x^2 / (x^3 - 1)
  EXPECT_EQ(f, RF(Poly<Scalar>{Scalar(0), Scalar(0), Scalar(3)}, {{Scalar(1), 1}, {w, 1}, {w * w, 1}}));
  EXPECT_EQ(f.residue(w), Scalar(1));
  EXPECT_EQ(f.residue_at_infinity(), Scalar(-3));
}

TEST(Poly, TaylorAndDivision) {
  const Poly<Scalar> p{Scalar(1), Scalar(2), Scalar(3)};  // 1 + 2x + 3x^2
  const auto t = p.taylor(Scalar(1), 3);                   // 6 + 8t + 3t^2
  EXPECT_EQ(t[0], Scalar(6));
  EXPECT_EQ(t[1], Scalar(8));
  EXPECT_EQ(t[2], Scalar(3));
  const auto [quot, rem] = divmod(p, Poly<Scalar>{Scalar(-1), Scalar(1)});
  EXPECT_EQ(quot, (Poly<Scalar>{Scalar(5), Scalar(3)}));
  EXPECT_EQ(rem, Poly<Scalar>::constant(Scalar(6)));
  EXPECT_EQ(p.derivative(), (Poly<Scalar>{Scalar(2), Scalar(6)}));
}
