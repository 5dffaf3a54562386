#include <gtest/gtest.h>

#include <set>

#include "nrefl/errors.hpp"
#include "nrefl/gaudin.hpp"
#include "nrefl/verify.hpp"
#include "support.hpp"

using namespace nrefl;
using testing_support::q;

namespace {

std::vector<Scalar> zs(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

GaudinModel two_l2() { return GaudinModel::two_reflection(1, 2, 3, zs({1, 2})); }
GaudinModel two_l3() { return GaudinModel::two_reflection(1, 2, 3, zs({1, 2, 4})); }
GaudinModel three_l3() { return GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4, 5})); }

SpinMatrix scaled_lax(const GaudinModel& m, int site, const Scalar& nu) { return m.local_lax(site, nu); }

Scalar coefficient(const SpinPoly& h, int i, int k) {
  auto c = pair_decomposition(h, i, h.max_site());
  if (!c) throw StructuralError("not a pair combination");
  return (*c)[static_cast<std::size_t>(k - 1)];
}

}  // namespace

TEST(LocalLax, Examples) {
  const GaudinModel m = two_l2();
  const SpinMatrix l = m.local_lax(1, Scalar(2));
  EXPECT_EQ(l(0, 0), q(1, 4) * SpinPoly::sz(1));
  EXPECT_EQ(l(0, 1), q(1, 2) * SpinPoly::splus(1));
  EXPECT_EQ(l(1, 0), q(1, 2) * SpinPoly::sminus(1));
  EXPECT_THROW(m.local_lax(1, Scalar(0)), PoleError);
  EXPECT_TRUE(local_poisson_residual(m, 1, Scalar(2), Scalar(3)).is_zero());
  EXPECT_TRUE(local_poisson_residual(m, 2, q(-7, 3), q(1, 9)).is_zero());
}

TEST(BigB, DegenerateAndBcl) {
  const GaudinModel triv(trivial_case(rational_r(2)), zs({1, 3}));
  const Scalar lam(7);
  EXPECT_EQ(triv.big_B(lam), scaled_lax(triv, 1, lam - Scalar(1)) + scaled_lax(triv, 2, lam - Scalar(3)));

  const GaudinModel bcl = GaudinModel::bcl(zs({2}));
  EXPECT_EQ(bcl.big_B(lam), bcl.local_lax(1, lam - Scalar(2)) - bcl.local_lax(1, -lam - Scalar(2)));
}

TEST(BigB, SymbolicPoleBookkeeping) {
  const GaudinModel m = two_l2();
  std::set<std::string> roots;
  const auto b = m.big_B_symbolic();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& r : b(i, j).poles()) roots.insert(r.to_string());
  const MobiusMap& tau = m.solution().tau;  // an involution, so tau^{-1} = tau
  const std::set<std::string> expected{"1", "2", tau(Scalar(1)).to_string(), tau(Scalar(2)).to_string(), "1/3"};
  EXPECT_EQ(roots, expected);
  // symbolic and fixed-point modes agree
  const Scalar lam = q(9, 7);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(b(i, j).eval(lam), m.big_B(lam)(i, j));
}

TEST(Hamiltonians, ResidueExamples) {
  const GaudinModel bcl = GaudinModel::bcl(zs({1, 2}));
  const SpinPoly h1 = bcl.hamiltonian_residue(1);
  EXPECT_EQ(h1, q(-2, 3) * pair_coupling(1, 2) + q(1, 2) * casimir(1, 2));

  const GaudinModel two = two_l2();
  EXPECT_EQ(coefficient(two.hamiltonian_explicit(1), 1, 2), q(5, 2));
  EXPECT_EQ(two.hamiltonian_residue(1), two.hamiltonian_explicit(1));
  EXPECT_EQ(coefficient(bcl.hamiltonian_explicit(1), 1, 2), Scalar(1) / Scalar(1 - 2) + Scalar(1) / Scalar(1 + 2));

  const GaudinModel z3 = GaudinModel::z3(zs({1, 2}));
  const Scalar w = Scalar::zeta(3);
  const Scalar want = Scalar(-1) + (Scalar(1) - Scalar(2) * w).inverse() + (Scalar(1) - Scalar(2) * w * w).inverse();
  EXPECT_EQ(coefficient(z3.hamiltonian_explicit(1), 1, 2), want);
  EXPECT_EQ(coefficient(z3.hamiltonian_residue(1), 1, 2), want);
  EXPECT_EQ(want, q(-3, 7));
}

TEST(Hamiltonians, ResidueEqualsExplicit) {
  const std::vector<GaudinModel> models{two_l2(), two_l3(), GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4})), three_l3(),
                                        GaudinModel::bcl(zs({1, 2, 4})), GaudinModel::z3(zs({1, 2, 4})),
                                        GaudinModel::two_reflection(2, -1, 5, {q(1, 3), Scalar(3), Scalar(-2)})};
  for (const auto& m : models)
    for (int i = 1; i <= m.L(); ++i) EXPECT_EQ(m.hamiltonian_residue(i), m.hamiltonian_explicit(i)) << to_string(m.mode()) << " H_" << i;
}

TEST(Hamiltonians, ResidueTheoremConsistency) {
  for (const auto& m : {two_l3(), three_l3()}) {
    const RatFun<SpinPoly> t = m.trace_B_squared();
    SpinPoly sum = t.residue_at_infinity();
    for (const auto& r : t.poles()) sum += t.residue(r);
    EXPECT_TRUE(sum.is_zero());
  }
}

TEST(Hamiltonians, CommuteWithCasimirs) {
  const GaudinModel m = three_l3();
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) EXPECT_TRUE(poisson_bracket(m.hamiltonian_residue(i), m.casimir(j)).is_zero());
}

TEST(Involution, Examples) {
  const GaudinModel m = two_l3();
  EXPECT_TRUE(involution_residual(m, 1, 2).is_zero());
  EXPECT_TRUE(involution_residual(GaudinModel::z3(zs({1, 2})), 1, 2).is_zero());
  const SpinPoly h1 = m.hamiltonian_residue(1), h2 = m.hamiltonian_residue(2);
  const SpinPoly tampered = h2 - coefficient(h2, 2, 1) * pair_coupling(2, 1) + pair_coupling(2, 1);
  EXPECT_FALSE(poisson_bracket(h1, tampered).is_zero());
}

TEST(Involution, AllModelsAllPairs) {
  for (const auto& m : {two_l3(), three_l3(), GaudinModel::bcl(zs({1, 2, 4})), GaudinModel::z3(zs({1, 2, 4}))})
    EXPECT_TRUE(verify_gaudin("involution", m).passed()) << to_string(m.mode());
}

TEST(Structural, FixedPointExamples) {
  const GaudinModel m = two_l2();
  const Scalar l(5), n(7);
  EXPECT_TRUE(trB_bracket_residual(m, 2, 2, l, n).is_zero());
  EXPECT_TRUE(trB_bracket_residual(m, 2, 3, l, n).is_zero());
  EXPECT_TRUE(trB_bracket_residual(m, 3, 3, l, l).is_zero());
  EXPECT_TRUE(rbb_residual(m, l, n).is_zero());
  EXPECT_TRUE(lax_residual(m, l, n, 2).is_zero());
  EXPECT_TRUE(lax_residual(m, l, n, 3).is_zero());
  EXPECT_TRUE(lax_residual(m, l, n, 1).is_zero());
  EXPECT_TRUE(mk_residual(m, l, n, 2).is_zero());
  EXPECT_FALSE(m_matrix(m, l, n, 2).is_zero());

  const GaudinModel triv(trivial_case(rational_r(2)), zs({1, 3}));
  EXPECT_TRUE(rbb_residual(triv, l, n).is_zero());
}

TEST(Structural, RbbFailsWithBrokenWeight) {
  // A model built from a non-solution still assembles, but the bracket identity breaks.
  const KSolution ks = identity_two_reflection(1, 2, 3);
  const KSolution bad = with_tampered_weight(ks, 1, -ks.weights.symbolic(1));
  const GaudinModel m(bad, zs({1, 2}));
  EXPECT_FALSE(rbb_residual(m, Scalar(5), Scalar(7)).is_zero());
}

TEST(Structural, SeededSamplesThreeReflection) {
  VerifyOptions o;
  o.tuples = 4;
  const GaudinModel m = three_l3();
  for (const char* s : {"rbb", "lax", "mk", "trbrackets", "local-poisson"}) EXPECT_TRUE(verify_gaudin(s, m, o).passed()) << s;
}

TEST(ModelValidation, Errors) {
  try {
    GaudinModel::two_reflection(1, 2, 3, zs({1, 1}));
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("sites must be mutually distinct"), std::string::npos);
  }
  // z = 1 is a pole of tau and of g^(1) for this 3-reflection map
  EXPECT_THROW(GaudinModel::three_reflection(1, 3, -1, 1, zs({1, 2})), ConstraintError);
  EXPECT_THROW(GaudinModel::three_reflection(1, 3, 0, 1, zs({2, 4})), ConstraintError);
  // tau(2) = -5 lands on a site
  EXPECT_THROW(GaudinModel::three_reflection(1, 3, -1, 1, zs({2, -5})), ConstraintError);
  EXPECT_THROW(GaudinModel::bcl(zs({0, 1})), ConstraintError);
  EXPECT_THROW(GaudinModel(trig_two_reflection(TrigTwoK::identity, 1, 2, 3), zs({1, 2})), ConstraintError);
  EXPECT_THROW(GaudinModel(trivial_case(rational_r(2)), zs({1, 2})).hamiltonian_explicit(1), ConstraintError);
}

TEST(Config, ParsesAndBuilds) {
  const GaudinConfig c = parse_gaudin_config(R"({"case":"three-reflection","params":{"a":1,"b":3,"c":-1,"d":1},"L":3,"z":[2,4,"5"],"casimirs":[1,"1/2",2]})");
  const GaudinModel m = GaudinModel::from_config(c);
  EXPECT_EQ(m.L(), 3);
  EXPECT_EQ(m.mode(), GaudinMode::three_reflection);
  EXPECT_EQ(m.casimir_values()[1], q(1, 2));
  EXPECT_THROW(parse_gaudin_config(R"({"case":"two-reflection","L":3,"z":[1,2]})"), ParseError);
  EXPECT_THROW(parse_gaudin_config(R"({"case":"hexagonal","z":[1,2]})"), ParseError);
  const GaudinConfig z3 = parse_gaudin_config(R"({"case":"z3","z":["z", 2]})");
  EXPECT_EQ(z3.z[0], Scalar::zeta(3));
  const GaudinConfig init = parse_gaudin_config(R"({"case":"bcl","z":[1,2],"initial":[[1,1,1],[[0.5,1],2,-1]]})");
  ASSERT_TRUE(init.initial);
  EXPECT_EQ((*init.initial)[1][0], std::complex<double>(0.5, 1));
}
