#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "nrefl/dynamics.hpp"
#include "nrefl/errors.hpp"
#include "support.hpp"

using namespace nrefl;
using testing_support::q;

namespace {

GaudinModel bcl2() { return GaudinModel::bcl({Scalar(1), Scalar(2)}); }

// ds/dt = {s, H} from the generator table and numerically differentiated H.
std::vector<Complex> finite_difference_field(const SpinPoly& h, std::vector<Complex> x) {
  const double eps = 1e-5;
  std::vector<Complex> grad(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) {
    auto up = x, dn = x;
    up[v] += eps;
    dn[v] -= eps;
    grad[v] = (h.evaluate(up) - h.evaluate(dn)) / (2 * eps);
  }
  std::vector<Complex> out(x.size());
  for (std::size_t s = 0; s < x.size() / 3; ++s) {
    const std::size_t p = 3 * s, m = p + 1, z = p + 2;
    out[p] = x[z] * grad[m] - 2.0 * x[p] * grad[z];
    out[m] = -x[z] * grad[p] + 2.0 * x[m] * grad[z];
    out[z] = 2.0 * x[p] * grad[p] - 2.0 * x[m] * grad[m];
  }
  return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

SimulationOptions opts(double t, double dt) {
  SimulationOptions o;
  o.t_end = t;
  o.dt = dt;
  return o;
}

}  // namespace

TEST(VectorField, CasimirFlowIsZero) {
  const VectorField f(casimir(1, 2), 2);
  const auto v = f(default_initial_state(2).x);
  for (const auto& c : v) EXPECT_EQ(c, Complex(0));
}

TEST(VectorField, SzGeneratesRotation) {
  // {s^+, s^z} = -2 s^+, so under H = s_1^z the raising component evolves as -2 s^+.
  const VectorField f(SpinPoly::sz(1), 1);
  const std::vector<Complex> x{Complex(3, 1), Complex(2, 0), Complex(5, 0)};
  const auto v = f(x);
  EXPECT_EQ(v[spin_var(1, Spin::plus)], -2.0 * x[0]);
  EXPECT_EQ(v[spin_var(1, Spin::minus)], 2.0 * x[1]);
  EXPECT_EQ(v[spin_var(1, Spin::z)], Complex(0));
  EXPECT_EQ(f.component(spin_var(1, Spin::plus)), SpinPoly(-2) * SpinPoly::splus(1));
}

TEST(VectorField, MatchesFiniteDifferences) {
  const GaudinModel m = bcl2();
  const SpinPoly h = m.hamiltonian_residue(1);
  const VectorField f(h, 2);
  const std::vector<Complex> ones(6, Complex(1));
  EXPECT_LT(max_diff(f(ones), finite_difference_field(h, ones)), 1e-6);
  const auto x = default_initial_state(2).x;
  EXPECT_LT(max_diff(f(x), finite_difference_field(h, x)), 1e-6);
  const SpinPoly h2 = combined_hamiltonian(m, {Scalar(2), q(-1, 3)});
  EXPECT_EQ(h2, Scalar(2) * m.hamiltonian_residue(1) - q(1, 3) * m.hamiltonian_residue(2));
  EXPECT_LT(max_diff(VectorField(h2, 2)(x), finite_difference_field(h2, x)), 1e-6);
}

TEST(Simulate, ZeroHamiltonianIsConstant) {
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  const PhaseState init = default_initial_state(2);
  const auto res = rk4_simulate(m, SpinPoly(), init, opts(1, 0.01), probes);
  EXPECT_EQ(res.final_state.x, init.x);
  EXPECT_EQ(res.drift.max_all(), 0.0);
}

class Conservation : public ::testing::TestWithParam<int> {};

TEST_P(Conservation, BclFlowKeepsInvariants) {
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  ASSERT_EQ(probes.size(), 3u);
  const auto res = rk4_simulate(m, m.hamiltonian_residue(GetParam()), default_initial_state(2), opts(10, 1e-3), probes);
  ASSERT_FALSE(res.aborted);
  EXPECT_EQ(res.steps, 10000u);
  for (double d : res.drift.H) EXPECT_LT(d, 1e-8);
  for (double d : res.drift.C) EXPECT_LT(d, 1e-8);
  for (double d : res.drift.detB) EXPECT_LT(d, 1e-8);
  for (double d : res.drift.eig) EXPECT_LT(d, 1e-7);
  EXPECT_EQ(res.rows.size(), 101u);
  // the state actually moves
  EXPECT_GT(max_diff(res.final_state.x, default_initial_state(2).x), 1e-2);
}

INSTANTIATE_TEST_SUITE_P(Hamiltonians, Conservation, ::testing::Values(1, 2));

TEST(Simulate, ThreeReflectionFlowKeepsInvariants) {
  const GaudinModel m = GaudinModel::three_reflection(1, 3, -1, 1, {Scalar(2), Scalar(4), Scalar(5)});
  const ProbeSet probes(m, default_probes(m));
  const auto res = rk4_simulate(m, m.hamiltonian_residue(2), default_initial_state(3), opts(2, 1e-3), probes);
  ASSERT_FALSE(res.aborted);
  EXPECT_LT(res.drift.max_all(), 1e-8);
}

TEST(Rk4, ConvergenceOrder) {
  const GaudinModel m = bcl2();
  const VectorField f(m.hamiltonian_residue(1), 2);
  EXPECT_GE(rk4_order_estimate(f, default_initial_state(2), 10, 1e-3), 3.8);
  const double coarse = rk4_order_estimate(f, default_initial_state(2), 1, 2e-2);
  EXPECT_NEAR(coarse, 4.0, 0.1);
}

TEST(Rk4, HalvingStepShrinksErrors) {
  // Large steps so that truncation error, not rounding, dominates.
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  const SpinPoly h = m.hamiltonian_residue(1);
  const PhaseState x0 = default_initial_state(2);
  const VectorField f(h, 2);
  const auto x1 = rk4_integrate(f, x0, 10, 0.02).x, x2 = rk4_integrate(f, x0, 10, 0.01).x, x3 = rk4_integrate(f, x0, 10, 0.005).x;
  const double state_ratio = max_diff(x1, x2) / max_diff(x2, x3);
  EXPECT_GE(state_ratio, 12.0);
  EXPECT_LE(state_ratio, 20.0);
  // The drift of the conserved quantities falls faster than the state error: about 2^5
  // per halving, since the h^5 term of the local error is tangent to the level sets here.
  const auto a = rk4_simulate(m, h, x0, opts(10, 0.02), probes);
  const auto b = rk4_simulate(m, h, x0, opts(10, 0.01), probes);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_GE(a.drift.H[k] / b.drift.H[k], 12.0);
    EXPECT_GE(a.drift.C[k] / b.drift.C[k], 12.0);
  }
}

TEST(Simulate, NonFiniteStateAborts) {
  // H = s^+ s^z gives ds^+/dt = -2 (s^+)^2, which blows up at t = 1/2 from s^+ = -1.
  const GaudinModel m = GaudinModel::bcl({Scalar(1)});
  const ProbeSet probes(m, default_probes(m));
  const PhaseState init = PhaseState::from_sites({{Complex(-1), Complex(1), Complex(1)}});
  const auto res = rk4_simulate(m, SpinPoly::splus(1) * SpinPoly::sz(1), init, opts(2, 1e-2), probes);
  EXPECT_TRUE(res.aborted);
  EXPECT_TRUE(res.final_state.finite());
  EXPECT_LT(res.final_state.t, 1.0);
  EXPECT_NE(res.failure.find("non-finite"), std::string::npos);
}

TEST(Simulate, RejectsBadOptions) {
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  EXPECT_THROW(rk4_simulate(m, SpinPoly(), default_initial_state(2), opts(1, 0), probes), StructuralError);
  EXPECT_THROW(rk4_simulate(m, SpinPoly(), default_initial_state(1), opts(1, 0.1), probes), StructuralError);
}

TEST(SpectralScan, Examples) {
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  const auto x = default_initial_state(2).x;
  for (const auto& s : spectral_scan(probes, x)) {
    for (const Complex& mu : {s.eig1, s.eig2}) EXPECT_LT(std::abs(mu * mu - s.trB * mu + s.detB), 1e-10 * (1 + std::abs(s.detB)));
  }
  for (const auto& s : spectral_scan(probes, std::vector<Complex>(6, Complex(0)))) {
    EXPECT_EQ(s.trB, Complex(0));
    EXPECT_EQ(s.eig1, Complex(0));
    EXPECT_EQ(s.eig2, Complex(0));
  }
  // B from the probe weights equals the exact matrix evaluated at the state
  const SpinMatrix exact = m.big_B(Scalar(5));
  const auto b = probes.B(0, x);
  EXPECT_LT(std::abs(b[1] - exact(0, 1).evaluate(x)), 1e-12);
  EXPECT_LT(std::abs(b[3] - exact(1, 1).evaluate(x)), 1e-12);
}

TEST(SpectralScan, ProbesAtPolesAreSkipped) {
  const GaudinModel m = bcl2();
  const ProbeSet exact(m, {Scalar(1), Scalar(-2), Scalar(9)});
  EXPECT_EQ(exact.size(), 1u);
  EXPECT_EQ(exact.warnings().size(), 2u);
  const ProbeSet floating(m, std::vector<Complex>{Complex(1 + 1e-14), Complex(9)});
  EXPECT_EQ(floating.size(), 1u);
  EXPECT_EQ(floating.warnings().size(), 1u);
}

TEST(Csv, HeaderAndRows) {
  const GaudinModel m = bcl2();
  const ProbeSet probes(m, default_probes(m));
  SimulationOptions o = opts(1, 0.01);
  o.log_every = 10;
  const auto res = rk4_simulate(m, m.hamiltonian_residue(1), default_initial_state(2), o, probes);
  std::ostringstream os;
  write_csv(os, res, 2, probes.size());
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header,
            "t,H_1,H_2,C_1,C_2,trB_re_1,trB_im_1,detB_re_1,detB_im_1,trB_re_2,trB_im_2,detB_re_2,detB_im_2,"
            "trB_re_3,trB_im_3,detB_re_3,detB_im_3");
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  EXPECT_EQ(lines, 11u);
}
