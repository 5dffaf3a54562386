// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "nrefl/dynamics.hpp"
#include "nrefl/reflection.hpp"
#include "nrefl/verify.hpp"
#include "support.hpp"

using namespace nrefl;
using testing_support::q;

namespace {

// Pinned tolerances and budgets.
constexpr double kRuntimeCybe = 1.0;         // s
constexpr double kRuntimeCatalog = 10.0;     // s
constexpr double kRuntimeInvolution = 30.0;  // s
constexpr double kRuntimeDynamics = 30.0;    // s
constexpr double kDriftTolerance = 1e-8;     // relative
constexpr double kMinOrder = 3.8;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

VerifyOptions tuples(std::size_t n) {
  VerifyOptions o;
  o.tuples = n;
  return o;
}

std::vector<Scalar> zs(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome c1_cybe() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const RMatrixFun& r : {rational_r(2), rational_r(3), trig_r()})
    o.require(verify_r("cybe", r, tuples(25)).passed(), r.name());
  const double s = seconds_since(t0);
  o.require(s < kRuntimeCybe, "runtime " + fmt(s) + " s");
  if (o.pass) o.detail = "3 r-matrices x 25 triples, " + fmt(s) + " s";
  return o;
}

Outcome c2_skew() {
  Outcome o;
  for (const RMatrixFun& r : {rational_r(2), rational_r(3), trig_r()}) o.require(verify_r("skew", r, tuples(25)).passed(), r.name());
  return o;
}

std::vector<KSolution> rational_g_cases() {
  std::vector<KSolution> out;
  for (unsigned N : {2u, 3u})
    for (long theta : {0L, 2L}) {
      out.push_back(rational_g_case(N, Scalar(theta), diagonal_roots_G(N, 2), "rational-g N=" + std::to_string(N) + " theta=" + std::to_string(theta) + " diag"));
      out.push_back(rational_g_case(N, Scalar(theta), cyclic_shift_G(N), "rational-g N=" + std::to_string(N) + " theta=" + std::to_string(theta) + " cyclic"));
    }
  return out;
}

std::vector<KSolution> required_cases() {
  std::vector<KSolution> out = rational_g_cases();
  out.push_back(identity_two_reflection(1, 2, 3));
  out.push_back(identity_three_reflection(1, 3, -1, 1));
  out.push_back(trig_two_reflection(TrigTwoK::identity, 1, 2, 3));
  out.push_back(trig_two_reflection(TrigTwoK::tau_nu, 1, 2, 3));
  return out;
}

std::vector<KSolution> trig_three_candidates() {
  std::vector<KSolution> out;
  for (auto k : {TrigThreeK::identity, TrigThreeK::tau_nu, TrigThreeK::tau2_nu, TrigThreeK::tau_tau2, TrigThreeK::poly_a, TrigThreeK::poly_b})
    out.push_back(trig_three_reflection(k, 1, 3, -1, 1));
  return out;
}

std::vector<KSolution> passing_trig_three;

Outcome c3_catalog() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& ks : required_cases()) {
    o.require(verify_case("nre", ks, tuples(25)).passed(), ks.label + " nre");
    o.require(verify_case("compact", ks, tuples(25)).passed(), ks.label + " compact");
  }
  std::string passing, failing;
  for (const auto& ks : trig_three_candidates()) {
    const bool ok = verify_case("nre", ks, tuples(25)).passed() && verify_case("compact", ks, tuples(25)).passed();
    (ok ? passing : failing) += (ok ? passing : failing).empty() ? ks.label : ", " + ks.label;
    if (ok) passing_trig_three.push_back(ks);
  }
  o.require(!passing_trig_three.empty() && passing_trig_three.front().label == "trig-3refl-id", "trig 3-reflection identity");
  const double s = seconds_since(t0);
  o.require(s < kRuntimeCatalog, "runtime " + fmt(s) + " s");
  const std::string report = "trig 3-reflection: " + std::to_string(passing_trig_three.size()) + " of 6 solve (" + passing +
                             "); not a solution: " + (failing.empty() ? "none" : failing) + "; " + fmt(s) + " s";
  o.detail = o.detail.empty() ? report : o.detail + "; " + report;
  return o;
}

Outcome c4_unitarity() {
  Outcome o;
  for (const auto& ks : rational_g_cases()) o.require(verify_case("nunitarity", ks, tuples(25)).passed(), ks.label);
  return o;
}

Outcome c5_rbar_cybe() {
  Outcome o;
  std::vector<KSolution> cases = required_cases();
  cases.insert(cases.end(), passing_trig_three.begin(), passing_trig_three.end());
  for (const auto& ks : cases) o.require(verify_case("rbar-cybe", ks, tuples(25)).passed(), ks.label);
  if (o.pass) o.detail = std::to_string(cases.size()) + " cases x 25 triples";
  return o;
}

Outcome c6_equivalence() {
  Outcome o;
  const KSolution two = identity_two_reflection(1, 2, 3);
  o.require(verify_case("equivalence", two, tuples(10)).passed(), "2-reflection");
  o.require(verify_case("equivalence", identity_three_reflection(1, 3, -1, 1), tuples(10)).passed(), "3-reflection");
  o.require(verify_case("equivalence", identity_three_reflection(1, -7, 1, 2), tuples(10)).passed(), "3-reflection a != d");
  const EquivalenceSample s = equivalence_check(two, Scalar(1), Scalar(0));
  const SpectralMatrix want = permutation_operator(2).scaled(q(-4, 3));
  o.require(s.rbar == want && s.transformed == want, "hand point (1,0)");
  return o;
}

Outcome c7_involution() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<GaudinModel> models{GaudinModel::two_reflection(1, 2, 3, zs({1, 2, 4})),
                                        GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4, 5})), GaudinModel::bcl(zs({1, 2, 4})),
                                        GaudinModel::z3(zs({1, 2, 4}))};
  for (const auto& m : models) o.require(verify_gaudin("involution", m).passed(), to_string(m.mode()));
  const double s = seconds_since(t0);
  o.require(s < kRuntimeInvolution, "runtime " + fmt(s) + " s");
  if (o.pass) o.detail = "4 models, L=3, all pairs, " + fmt(s) + " s";
  return o;
}

Outcome c8_residue_explicit() {
  Outcome o;
  const std::vector<GaudinModel> models{
      GaudinModel::two_reflection(1, 2, 3, zs({1, 2})), GaudinModel::two_reflection(1, 2, 3, zs({1, 2, 4})),
      GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4})), GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4, 5}))};
  for (const auto& m : models) o.require(verify_gaudin("residue-equality", m).passed(), to_string(m.mode()) + " L=" + std::to_string(m.L()));
  return o;
}

Outcome c9_structural() {
  Outcome o;
  const std::vector<GaudinModel> models{GaudinModel::two_reflection(1, 2, 3, zs({1, 2})),
                                        GaudinModel::three_reflection(1, 3, -1, 1, zs({2, 4}))};
  for (const auto& m : models)
    for (const char* s : {"rbb", "trbrackets", "lax", "mk"}) o.require(verify_gaudin(s, m, tuples(10)).passed(), to_string(m.mode()) + " " + s);
  return o;
}

Outcome c10_spin() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const int sites = 1 + t % 3;
    const SpinPoly f = testing_support::random_quadratic(rng, sites), g = testing_support::random_quadratic(rng, sites),
                   h = testing_support::random_quadratic(rng, sites);
    const bool anti = (poisson_bracket(f, g) + poisson_bracket(g, f)).is_zero();
    const bool leib = poisson_bracket(f * g, h) == f * poisson_bracket(g, h) + poisson_bracket(f, h) * g;
    const bool jac = (poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) + poisson_bracket(h, poisson_bracket(f, g))).is_zero();
    bad += (anti && leib && jac) ? 0 : 1;
  }
  o.require(bad == 0, std::to_string(bad) + " triples fail");
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k)
      for (Spin s : {Spin::plus, Spin::minus, Spin::z})
        o.require(poisson_bracket(casimir(j, 3), SpinPoly::gen(k, s)).is_zero(), "casimir " + std::to_string(j));
  return o;
}

Outcome c11_residues() {
  Outcome o;
  using RF = RatFun<Scalar>;
  Sampler s(kDefaultSeed);
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> num;
    for (int k = 0; k <= t % 5; ++k) num.push_back(Scalar(s.next_rational()));
    std::vector<LinearFactor> den;
    for (int k = 0; k < 1 + t % 3; ++k) den.push_back({Scalar(s.next_rational()), 1 + (k + t) % 2});
    const RF f(Poly<Scalar>(num), den, Scalar(1));
    Scalar sum = f.residue_at_infinity();
    for (const auto& r : f.poles()) sum += f.residue(r);
    bad += sum.is_zero() ? 0 : 1;
  }
  o.require(bad == 0, std::to_string(bad) + " of 50 random functions");
  auto pole = [](long r, int k) { return RF::linear_inverse_power(Scalar(1), Scalar(-r), k); };
  o.require(pole(1, 1).residue(Scalar(1)) == Scalar(1), "res 1/(x-1)");
  o.require((RF::polynomial(Poly<Scalar>{Scalar(1), Scalar(1)}) * pole(0, 2)).residue(Scalar(0)) == Scalar(1), "res (1+x)/x^2");
  o.require((RF::polynomial(Poly<Scalar>{Scalar(0), Scalar(1)}) * pole(2, 2) * pole(3, 1)).residue(Scalar(2)) == Scalar(-3), "res x/((x-2)^2(x-3))");
  return o;
}

Outcome c12_dynamics() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const GaudinModel m = GaudinModel::bcl(zs({1, 2}));
  const ProbeSet probes(m, default_probes(m));
  o.require(probes.size() == 3, "3 probes");
  SimulationOptions opt;
  opt.t_end = 10;
  opt.dt = 1e-3;
  const SpinPoly h1 = m.hamiltonian_residue(1);
  const auto res = rk4_simulate(m, h1, default_initial_state(2), opt, probes);
  o.require(!res.aborted, "aborted");
  double worst = res.drift.H[1];
  for (double d : res.drift.C) worst = std::max(worst, d);
  for (double d : res.drift.detB) worst = std::max(worst, d);
  o.require(worst < kDriftTolerance, "drift " + fmt(worst));
  const double order = rk4_order_estimate(VectorField(h1, 2), default_initial_state(2), 10, 1e-3);
  o.require(order >= kMinOrder, "order " + fmt(order));
  const double s = seconds_since(t0);
  o.require(s < kRuntimeDynamics, "runtime " + fmt(s) + " s");
  if (o.pass) o.detail = "max drift " + fmt(worst) + ", order " + fmt(order) + ", " + fmt(s) + " s";
  return o;
}

Outcome c13_determinism() {
  Outcome o;
  const KSolution ks = identity_three_reflection(1, 3, -1, 1);
  o.require(verify_case("nre", ks).to_json() == verify_case("nre", ks).to_json(), "nre report");
  const KSolution bad = with_tampered_weight(ks, 1, -ks.weights.symbolic(1));
  o.require(verify_case("nre", bad).to_json() == verify_case("nre", bad).to_json(), "failing report");
  const GaudinModel m = GaudinModel::two_reflection(1, 2, 3, zs({1, 2}));
  o.require(verify_gaudin("rbb", m).to_json() == verify_gaudin("rbb", m).to_json(), "rbb report");
  o.require(verify_r("cybe", trig_r()).to_json() == verify_r("cybe", trig_r()).to_json(), "cybe report");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"CYBE for rational (n=2,3) and trigonometric r", c1_cybe},
      {"skew-symmetry of the base r-matrices", c2_skew},
      {"N-reflection and compact form over the catalog", c3_catalog},
      {"N-unitarity f = theta^N + (-1)^(N-1) lambda^N", c4_unitarity},
      {"rbar satisfies CYBE for every passing case", c5_rbar_cybe},
      {"equivalence transforms to the rational r-matrix", c6_equivalence},
      {"Gaudin Hamiltonians in involution", c7_involution},
      {"residue Hamiltonians equal the closed forms", c8_residue_explicit},
      {"rbb, tr B^p brackets, Lax and Mk identities", c9_structural},
      {"spin algebra: antisymmetry, Leibniz, Jacobi, Casimirs", c10_spin},
      {"residue calculus", c11_residues},
      {"RK4 conservation and convergence order", c12_dynamics},
      {"deterministic reports", c13_determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2d. %s%s%s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
