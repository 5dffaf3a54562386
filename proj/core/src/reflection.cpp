#include "nrefl/reflection.hpp"

#include <json.hpp>

#include <set>
#include <sstream>

namespace nrefl {

// ---- MobiusMap ---------------------------------------------------------------

MobiusMap::MobiusMap(Scalar a, Scalar b, Scalar c, Scalar d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if ((a_ * d_ - b_ * c_).is_zero())
    throw ConstraintError("Mobius map needs ad - bc != 0 (a=" + a_.to_string() + ", b=" + b_.to_string() +
                          ", c=" + c_.to_string() + ", d=" + d_.to_string() + ")");
}

Scalar MobiusMap::operator()(const Scalar& nu) const {
  const Scalar den = c_ * nu + d_;
  if (den.is_zero()) throw PoleError("tau has a pole at " + nu.to_string());
  return (a_ * nu + b_) / den;
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MobiusMap MobiusMap::iterate(unsigned j) const {
  MobiusMap out = identity();
  for (unsigned i = 0; i < j; ++i) out = compose(out);
  return out;
}

Scalar MobiusMap::apply_iterate(unsigned j, const Scalar& nu) const {
  Scalar x = nu;
  for (unsigned i = 0; i < j; ++i) {
    try {
      x = (*this)(x);
    } catch (const PoleError& e) {
      throw PoleError("tau^" + std::to_string(i + 1) + "(" + nu.to_string() + "): " + e.what());
    }
  }
  return x;
}

std::optional<unsigned> MobiusMap::order(unsigned max_order) const {
  MobiusMap m = *this;
  for (unsigned k = 1; k <= max_order; ++k) {
    if (m.b_.is_zero() && m.c_.is_zero() && m.a_ == m.d_) return k;
    m = compose(m);
  }
  return std::nullopt;
}

bool MobiusMap::projectively_equal(const MobiusMap& o) const {
  const Scalar x[4] = {a_, b_, c_, d_};
  const Scalar y[4] = {o.a_, o.b_, o.c_, o.d_};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (x[i] * y[j] != x[j] * y[i]) return false;
  return true;
}

RatFun<Scalar> MobiusMap::inverse_shift(const Scalar& z) const {
  // 1/(tau(l) - z) = (c l + d) / ((a - c z) l + (b - d z))
  return RatFun<Scalar>::linear_ratio(c_, d_, a_ - c_ * z, b_ - d_ * z);
}

std::string MobiusMap::to_string() const {
  return "(" + a_.to_string() + "*nu + " + b_.to_string() + ")/(" + c_.to_string() + "*nu + " + d_.to_string() + ")";
}

// ---- WeightFamily ------------------------------------------------------------

WeightFamily::WeightFamily(std::vector<RatFun<Scalar>> weights) : g_(std::move(weights)) {
  if (g_.empty()) throw StructuralError("weight family needs at least g^(0)");
  if (!(g_[0] == RatFun<Scalar>::constant(Scalar(1)))) throw StructuralError("g^(0) must be identically 1");
}

WeightFamily WeightFamily::trivial(unsigned N) {
  return powers(N, Scalar(1));
}

WeightFamily WeightFamily::powers(unsigned N, const Scalar& omega) {
  if (N == 0) throw StructuralError("N must be positive");
  std::vector<RatFun<Scalar>> g;
  for (unsigned j = 0; j < N; ++j) g.push_back(RatFun<Scalar>::constant(omega.pow(j)));
  return WeightFamily(std::move(g));
}

Scalar WeightFamily::operator()(unsigned j, const Scalar& nu) const {
  try {
    return g_.at(j).eval(nu);
  } catch (const PoleError&) {
    throw PoleError("g^(" + std::to_string(j) + ") has a pole at " + nu.to_string());
  }
}

// ---- residuals -----------------------------------------------------------------

SpectralMatrix KSolution::k_at(const Scalar& nu) const {
  try {
    return k(nu).with_legs(Legs::single(n));
  } catch (const DivisionByZero& e) {
    throw PoleError("k(" + nu.to_string() + ") undefined: " + e.what());
  }
}

SpectralMatrix k_iter(const KSolution& ks, unsigned j, const Scalar& nu) {
  SpectralMatrix out = SpectralMatrix::identity(ks.n);
  Scalar x = nu;
  for (unsigned i = 0; i < j; ++i) {
    try {
      if (i > 0) x = ks.tau(x);
      out = out * ks.k_at(x);
    } catch (const PoleError& e) {
      throw PoleError("k^(" + std::to_string(j) + ")(" + nu.to_string() + ") at iterate tau^" + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

UnitaritySample n_unitarity_at(const KSolution& ks, const Scalar& nu) {
  UnitaritySample s;
  s.nu = nu;
  s.f = scalar_multiple_of_identity(k_iter(ks, ks.N, nu));
  if (ks.expected_unitarity) s.expected = (*ks.expected_unitarity)(nu);
  s.ok = s.f.has_value() && (!s.expected || *s.f == *s.expected);
  return s;
}

namespace {

struct Conjugator {
  SpectralMatrix kb, kb_inv;
};

/// k_b^(j)(nu) and its inverse for j = 0..N-1.
std::vector<Conjugator> conjugators(const KSolution& ks, const Scalar& nu) {
  std::vector<Conjugator> out;
  for (unsigned j = 0; j < ks.N; ++j) {
    if (ks.identity_k) {
      const SpectralMatrix id = SpectralMatrix::identity(Legs::pair(ks.n));
      out.push_back({id, id});
      continue;
    }
    const SpectralMatrix kj = k_iter(ks, j, nu);
    const std::string name = "k^(" + std::to_string(j) + ")(" + nu.to_string() + ")";
    SpectralMatrix inv;
    try {
      inv = inverse(kj, name);
    } catch (const SingularMatrix& e) {
      throw PoleError(e.what());
    }
    out.push_back({embed_second(kj), embed_second(inv)});
  }
  return out;
}

/// sum_j g^(j)(nu) k_b^(j) r_ab(x, tau^j nu) k_b^(j)^{-1}
SpectralMatrix weighted_sum(const KSolution& ks, const RMatrixFun& r, const std::vector<Conjugator>& conj,
                            const Scalar& x, const Scalar& nu, const char* side) {
  SpectralMatrix acc(Legs::pair(ks.n));
  for (unsigned j = 0; j < ks.N; ++j) {
    const std::string term = std::string(side) + " term j=" + std::to_string(j);
    try {
      const Scalar g = ks.weights(j, nu);
      if (g.is_zero()) continue;
      const Scalar tj = ks.tau.apply_iterate(j, nu);
      SpectralMatrix t = r(x, tj);
      if (!ks.identity_k) t = conj[j].kb * t * conj[j].kb_inv;
      acc += t.scaled(g);
    } catch (const PoleError& e) {
      throw PoleError(term + ": " + e.what());
    }
  }
  return acc.with_legs(Legs::pair(ks.n));
}

SpectralMatrix k_first(const KSolution& ks, const Scalar& lambda) {
  return embed_first(ks.k_at(lambda));
}

}  // namespace

SpectralMatrix nre_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu) {
  const auto conj = conjugators(ks, nu);
  const SpectralMatrix ka = k_first(ks, lambda);
  Scalar tl;
  try {
    tl = ks.tau(lambda);
  } catch (const PoleError& e) {
    throw PoleError(std::string("tau(lambda): ") + e.what());
  }
  const SpectralMatrix lhs = weighted_sum(ks, ks.base_r, conj, lambda, nu, "LHS") * ka;
  const SpectralMatrix rhs = ka * weighted_sum(ks, ks.base_r, conj, tl, nu, "RHS");
  return (lhs - rhs).with_legs(Legs::pair(ks.n));
}

RMatrixFun build_rbar(const RMatrixFun& r, const KSolution& ks) {
  if (r.n() != ks.n) throw StructuralError("r-matrix and k-matrix factor sizes differ");
  auto eval = [r, ks](const Scalar& lambda, const Scalar& nu) {
    return weighted_sum(ks, r, conjugators(ks, nu), lambda, nu, "rbar");
  };
  auto pole = [eval](const Scalar& lambda, const Scalar& nu) {
    try {
      eval(lambda, nu);
      return false;
    } catch (const PoleError&) {
      return true;
    }
  };
  return RMatrixFun(r.n(), RKind::constructed, "rbar[" + ks.label + "]", eval, pole);
}

SpectralMatrix compact_form_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu) {
  const RMatrixFun rbar = build_rbar(ks.base_r, ks);
  const SpectralMatrix ka = k_first(ks, lambda);
  Scalar tl;
  try {
    tl = ks.tau(lambda);
  } catch (const PoleError& e) {
    throw PoleError(std::string("tau(lambda): ") + e.what());
  }
  return (rbar(lambda, nu) * ka - ka * rbar(tl, nu)).with_legs(Legs::pair(ks.n));
}

SpectralMatrix symmetry_relation_residual(const KSolution& ks, const Scalar& omega, const Scalar& lambda, const Scalar& nu) {
  const SpectralMatrix kl = ks.k_at(lambda);
  const SpectralMatrix kn = ks.k_at(nu);
  SpectralMatrix kl_inv, kn_inv;
  try {
    kl_inv = inverse(kl, "k(lambda)");
    kn_inv = inverse(kn, "k(nu)");
  } catch (const SingularMatrix& e) {
    throw PoleError(e.what());
  }
  const SpectralMatrix outer = embed_first(kl) * embed_second(kn);
  const SpectralMatrix outer_inv = embed_second(kn_inv) * embed_first(kl_inv);
  const SpectralMatrix rhs = (outer * ks.base_r(ks.tau(lambda), ks.tau(nu)) * outer_inv).scaled(omega);
  return (ks.base_r(lambda, nu) - rhs).with_legs(Legs::pair(ks.n));
}

Scalar scalar_functional_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu) {
  if (!ks.identity_k) throw StructuralError("scalar functional identity applies to identity k only");
  // the trigonometric r is not a multiple of P, so its NRE does not collapse to this kernel
  if (ks.base_r.kind() != RKind::rational) throw StructuralError("scalar functional identity applies to the rational r only");
  const Scalar tl = ks.tau(lambda);
  Scalar acc(0);
  for (unsigned j = 0; j < ks.N; ++j) {
    const Scalar g = ks.weights(j, nu);
    const Scalar tj = ks.tau.apply_iterate(j, nu);
    if ((lambda - tj).is_zero() || (tl - tj).is_zero())
      throw PoleError("functional identity term j=" + std::to_string(j) + " has a pole");
    acc += g / (lambda - tj) - g / (tl - tj);
  }
  return acc;
}

// ---- equivalence transforms ----------------------------------------------------

namespace {

const Scalar& param(const KSolution& ks, const std::string& name) {
  auto it = ks.params.find(name);
  if (it == ks.params.end()) throw StructuralError("case " + ks.label + " has no parameter " + name);
  return it->second;
}

Scalar checked_div(const Scalar& num, const Scalar& den, const char* what, const Scalar& at) {
  if (den.is_zero()) throw PoleError(std::string(what) + " has a pole at " + at.to_string());
  return num / den;
}

}  // namespace

EquivalenceTransform equivalence_transform(const KSolution& ks) {
  const bool rational_base = ks.base_r.kind() == RKind::rational;
  if (!ks.identity_k || !rational_base || (ks.N != 2 && ks.N != 3) || !ks.params.count("c"))
    throw ConstraintError("no equivalence transform for case " + ks.label);
  const Scalar a = param(ks, "a"), b = param(ks, "b"), c = param(ks, "c");
  if (c.is_zero()) throw ConstraintError("equivalence transform needs c != 0");
  EquivalenceTransform t;
  if (ks.N == 2) {
    t.reparam = [=](const Scalar& m) { return checked_div(b + c * m * m, Scalar(2) * c * (a - c * m), "p", m); };
    t.prefactor = [=](const Scalar& m) {
      const Scalar s = a - c * m;
      return checked_div(b + Scalar(2) * a * m - c * m * m, Scalar(2) * s * s, "prefactor", m);
    };
    return t;
  }
  // p is the orbit sum (x + tau x + tau^2 x)/b^2, the tau-invariant cubic with poles on the
  // orbit of infinity; the closed cubic form is only invariant for special a, d.
  // b != 0 since a^2 + ad + d^2 = 0 has no nonzero rational solution.
  const MobiusMap tau = ks.tau;
  const WeightFamily g = ks.weights;
  const Scalar bb = b * b;
  t.reparam = [=](const Scalar& x) {
    try {
      return (x + tau(x) + tau.apply_iterate(2, x)) / bb;
    } catch (const PoleError&) {
      throw PoleError("p has a pole at " + x.to_string());
    }
  };
  // p'(mu); the weights are the derivatives of the tau iterates
  t.prefactor = [=](const Scalar& m) {
    try {
      return (Scalar(1) + g(1, m) + g(2, m)) / bb;
    } catch (const PoleError&) {
      throw PoleError("prefactor has a pole at " + m.to_string());
    }
  };
  return t;
}

EquivalenceSample equivalence_check(const KSolution& ks, const Scalar& lambda, const Scalar& mu) {
  const EquivalenceTransform t = equivalence_transform(ks);
  EquivalenceSample s;
  s.rbar = build_rbar(ks.base_r, ks)(lambda, mu);
  const Scalar dp = t.reparam(lambda) - t.reparam(mu);
  if (dp.is_zero()) throw PoleError("p(lambda) == p(mu) at (" + lambda.to_string() + ", " + mu.to_string() + ")");
  s.transformed = permutation_operator(ks.n).scaled(t.prefactor(mu) / dp).with_legs(Legs::pair(ks.n));
  s.equal = (s.rbar - s.transformed).is_zero();
  return s;
}

// ---- catalog -------------------------------------------------------------------

SpectralMatrix diagonal_roots_G(unsigned N, std::size_t n) {
  const Scalar omega = Scalar::zeta(static_cast<int>(N));
  SpectralMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = omega.pow(static_cast<long>(i));
  return g;
}

SpectralMatrix cyclic_shift_G(std::size_t n) {
  SpectralMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) g(i, (i + 1) % n) = Scalar(1);
  return g;
}

KSolution rational_g_case(unsigned N, const Scalar& theta, const SpectralMatrix& G, const std::string& label) {
  if (N == 0) throw ConstraintError("N must be positive");
  const std::size_t n = G.dim();
  if (!(matrix_power(G, N) - SpectralMatrix::identity(n)).is_zero())
    throw ConstraintError("G^N = 1 violated for N=" + std::to_string(N));
  const Scalar omega = Scalar::zeta(static_cast<int>(N));
  KSolution ks;
  ks.label = label;
  ks.n = n;
  ks.N = N;
  ks.tau = MobiusMap(omega, 0, 0, 1);
  ks.weights = WeightFamily::powers(N, omega);
  const SpectralMatrix g = G.with_legs(Legs::single(n));
  ks.k = [theta, g, n](const Scalar& nu) { return SpectralMatrix::identity(n).scaled(theta) + g.scaled(nu); };
  ks.base_r = rational_r(n);
  ks.params = {{"theta", theta}};
  ks.G = g;
  const Scalar sign = N % 2 ? Scalar(1) : Scalar(-1);
  ks.expected_unitarity = [theta, N, sign](const Scalar& nu) { return theta.pow(N) + sign * nu.pow(N); };
  return ks;
}

namespace {

KSolution identity_case(std::string label, unsigned N, MobiusMap tau, std::vector<RatFun<Scalar>> g,
                        RMatrixFun r, std::map<std::string, Scalar> params) {
  KSolution ks;
  ks.label = std::move(label);
  ks.n = r.n();
  ks.N = N;
  ks.tau = std::move(tau);
  ks.weights = WeightFamily(std::move(g));
  const std::size_t n = ks.n;
  ks.k = [n](const Scalar&) { return SpectralMatrix::identity(n); };
  ks.base_r = std::move(r);
  ks.params = std::move(params);
  ks.identity_k = true;
  ks.expected_unitarity = [](const Scalar&) { return Scalar(1); };
  return ks;
}

RatFun<Scalar> one() { return RatFun<Scalar>::constant(Scalar(1)); }

/// num / ((alpha1 l + beta1)(alpha2 l + beta2)) with num = coef * l.
RatFun<Scalar> nu_over_two_linear(const Scalar& coef, const Scalar& a1, const Scalar& b1, const Scalar& a2, const Scalar& b2) {
  return RatFun<Scalar>(Poly<Scalar>{Scalar(0), coef}) * RatFun<Scalar>::linear_inverse_power(a1, b1, 1) *
         RatFun<Scalar>::linear_inverse_power(a2, b2, 1);
}

void check_three_constraint(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  const Scalar v = a * a + a * d + b * c + d * d;
  if (!v.is_zero()) throw ConstraintError("a^2 + ad + bc + d^2 = 0 violated (got " + v.to_string() + ")");
}

SpectralMatrix diag2(const Scalar& x, const Scalar& y) {
  return SpectralMatrix::from_rows({{x, Scalar(0)}, {Scalar(0), y}});
}

}  // namespace

KSolution identity_two_reflection(const Scalar& a, const Scalar& b, const Scalar& c) {
  MobiusMap tau(a, b, c, -a);
  auto g1 = RatFun<Scalar>::linear_inverse_power(-c, a, 2).times(-(a * a + b * c));
  return identity_case("id-2refl", 2, tau, {one(), g1}, rational_r(2), {{"a", a}, {"b", b}, {"c", c}});
}

KSolution identity_three_reflection(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  check_three_constraint(a, b, c, d);
  MobiusMap tau(a, b, c, d);
  const Scalar det = a * d - b * c;
  auto g1 = RatFun<Scalar>::linear_inverse_power(c, d, 2).times(det);
  auto g2 = RatFun<Scalar>::linear_inverse_power(-c, a, 2).times(det);
  return identity_case("id-3refl", 3, tau, {one(), g1, g2}, rational_r(2), {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
}

KSolution trig_two_reflection(TrigTwoK which, const Scalar& a, const Scalar& b, const Scalar& c) {
  MobiusMap tau(a, b, c, -a);
  // g^(1) = (a^2 + bc) nu / ((a - c nu)(a nu + b)); the opposite overall sign fails the equation.
  auto g1 = nu_over_two_linear(a * a + b * c, -c, a, a, b);
  KSolution ks = identity_case(which == TrigTwoK::identity ? "trig-2refl-id" : "trig-2refl-diag", 2, tau, {one(), g1},
                               trig_r(), {{"a", a}, {"b", b}, {"c", c}});
  if (which == TrigTwoK::tau_nu) {
    ks.identity_k = false;
    ks.expected_unitarity.reset();
    ks.k = [tau](const Scalar& nu) { return diag2(tau(nu), nu); };
  }
  return ks;
}

KSolution trig_three_reflection(TrigThreeK which, const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  check_three_constraint(a, b, c, d);
  MobiusMap tau(a, b, c, d);
  const Scalar s2 = (a + d) * (a + d);
  auto g1 = nu_over_two_linear(s2, a, b, c, d);
  auto g2 = nu_over_two_linear(s2, d, -b, -c, a);
  static const std::map<TrigThreeK, std::string> names = {
      {TrigThreeK::identity, "trig-3refl-id"},         {TrigThreeK::tau_nu, "trig-3refl-tau-nu"},
      {TrigThreeK::tau2_nu, "trig-3refl-tau2-nu"},     {TrigThreeK::tau_tau2, "trig-3refl-tau-tau2"},
      {TrigThreeK::poly_a, "trig-3refl-poly-a"},       {TrigThreeK::poly_b, "trig-3refl-poly-b"}};
  KSolution ks = identity_case(names.at(which), 3, tau, {one(), g1, g2}, trig_r(),
                               {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
  if (which == TrigThreeK::identity) return ks;
  ks.identity_k = false;
  ks.expected_unitarity.reset();
  switch (which) {
    case TrigThreeK::tau_nu:
      ks.k = [tau](const Scalar& nu) { return diag2(tau(nu), nu); };
      break;
    case TrigThreeK::tau2_nu:
      ks.k = [tau](const Scalar& nu) { return diag2(tau.apply_iterate(2, nu), nu); };
      break;
    case TrigThreeK::tau_tau2:
      ks.k = [tau](const Scalar& nu) { return diag2(tau(nu), tau.apply_iterate(2, nu)); };
      break;
    case TrigThreeK::poly_a:
      ks.k = [=](const Scalar& nu) { return diag2((a + d) * (a * nu + b), (c * nu - a) * (d * nu - b)); };
      break;
    case TrigThreeK::poly_b:
      ks.k = [=](const Scalar& nu) { return diag2((c * nu - a) * (d * nu - b), (a + d) * (c * nu + d)); };
      break;
    case TrigThreeK::identity:
      break;
  }
  return ks;
}

KSolution trivial_case(const RMatrixFun& r) {
  return identity_case("trivial", 1, MobiusMap::identity(), {one()}, r, {});
}

KSolution with_tampered_weight(const KSolution& ks, unsigned j, const RatFun<Scalar>& replacement) {
  if (j == 0 || j >= ks.N) throw StructuralError("only g^(1..N-1) can be tampered with");
  std::vector<RatFun<Scalar>> g;
  for (unsigned i = 0; i < ks.N; ++i) g.push_back(i == j ? replacement : ks.weights.symbolic(i));
  KSolution out = ks;
  out.weights = WeightFamily(std::move(g));
  out.label = ks.label + "+tampered-g" + std::to_string(j);
  return out;
}

// ---- descriptors -----------------------------------------------------------------

namespace {

const std::map<std::string, std::vector<std::string>>& label_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"rational-g", {"theta"}},
      {"id-2refl", {"a", "b", "c"}},
      {"id-3refl", {"a", "b", "c", "d"}},
      {"trig-2refl-id", {"a", "b", "c"}},
      {"trig-2refl-diag", {"a", "b", "c"}},
      {"trig-3refl-id", {"a", "b", "c", "d"}},
      {"trig-3refl-tau-nu", {"a", "b", "c", "d"}},
      {"trig-3refl-tau2-nu", {"a", "b", "c", "d"}},
      {"trig-3refl-tau-tau2", {"a", "b", "c", "d"}},
      {"trig-3refl-poly-a", {"a", "b", "c", "d"}},
      {"trig-3refl-poly-b", {"a", "b", "c", "d"}},
      {"trivial", {}},
  };
  return m;
}

const std::map<std::string, Scalar>& default_params(const std::string& label) {
  static const std::map<std::string, Scalar> rational_g = {{"theta", Scalar(2)}};
  static const std::map<std::string, Scalar> two = {{"a", Scalar(1)}, {"b", Scalar(2)}, {"c", Scalar(3)}};
  static const std::map<std::string, Scalar> three = {{"a", Scalar(1)}, {"b", Scalar(3)}, {"c", Scalar(-1)}, {"d", Scalar(1)}};
  static const std::map<std::string, Scalar> none;
  if (label == "rational-g") return rational_g;
  if (label == "trivial") return none;
  if (label.find("2refl") != std::string::npos) return two;
  return three;
}

}  // namespace

KSolution build_case(const CaseDescriptor& desc) {
  auto known = label_params().find(desc.label);
  if (known == label_params().end()) throw ParseError("unknown case label '" + desc.label + "'");
  const auto& allowed = known->second;
  for (const auto& [name, _] : desc.params)
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw ParseError("case " + desc.label + " has no parameter '" + name + "'");
  auto p = [&](const std::string& name) {
    auto it = desc.params.find(name);
    return it != desc.params.end() ? it->second : default_params(desc.label).at(name);
  };
  const std::string& l = desc.label;
  if (l == "rational-g") {
    const unsigned N = desc.N.value_or(2);
    SpectralMatrix G;
    if (desc.G) {
      G = *desc.G;
    } else {
      const std::string kind = desc.G_kind.value_or("diag-roots");
      if (kind == "diag-roots")
        G = diagonal_roots_G(N, desc.n.value_or(2));
      else if (kind == "cyclic")
        G = cyclic_shift_G(desc.n.value_or(N));
      else
        throw ParseError("unknown G kind '" + kind + "' (expected diag-roots or cyclic)");
    }
    if (desc.n && *desc.n != G.dim()) throw ConstraintError("n does not match the size of G");
    return rational_g_case(N, p("theta"), G);
  }
  if (l == "trivial") {
    const std::string r = desc.r.value_or("rational");
    if (r == "rational") return trivial_case(rational_r(desc.n.value_or(2)));
    if (r == "trig") return trivial_case(trig_r());
    throw ParseError("unknown base r '" + r + "' (expected rational or trig)");
  }
  if (desc.N) {
    const unsigned want = l.find("2refl") != std::string::npos ? 2 : 3;
    if (*desc.N != want) throw ConstraintError("case " + l + " has N=" + std::to_string(want));
  }
  if (l == "id-2refl") return identity_two_reflection(p("a"), p("b"), p("c"));
  if (l == "id-3refl") return identity_three_reflection(p("a"), p("b"), p("c"), p("d"));
  if (l == "trig-2refl-id") return trig_two_reflection(TrigTwoK::identity, p("a"), p("b"), p("c"));
  if (l == "trig-2refl-diag") return trig_two_reflection(TrigTwoK::tau_nu, p("a"), p("b"), p("c"));
  static const std::map<std::string, TrigThreeK> three = {
      {"trig-3refl-id", TrigThreeK::identity},       {"trig-3refl-tau-nu", TrigThreeK::tau_nu},
      {"trig-3refl-tau2-nu", TrigThreeK::tau2_nu},   {"trig-3refl-tau-tau2", TrigThreeK::tau_tau2},
      {"trig-3refl-poly-a", TrigThreeK::poly_a},     {"trig-3refl-poly-b", TrigThreeK::poly_b}};
  return trig_three_reflection(three.at(l), p("a"), p("b"), p("c"), p("d"));
}

std::optional<int> case_cyclotomic_order(const CaseDescriptor& desc) {
  if (desc.label == "rational-g") return static_cast<int>(desc.N.value_or(2));
  return std::nullopt;
}

namespace {

Scalar json_scalar(const nlohmann::json& v, std::optional<int> order, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (v.is_string()) return parse_scalar(v.get<std::string>(), order);
  throw ParseError(where + ": expected an integer or an exact string such as \"3/2\"");
}

}  // namespace

CaseDescriptor parse_case_descriptor(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("case descriptor is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("case descriptor must be a JSON object");
  CaseDescriptor d;
  static const std::set<std::string> keys = {"label", "N", "n", "params", "G", "G_kind", "r"};
  for (const auto& [k, _] : j.items())
    if (!keys.count(k)) throw ParseError("unknown case descriptor field '" + k + "'");
  if (!j.contains("label") || !j["label"].is_string()) throw ParseError("case descriptor needs a string 'label'");
  d.label = j["label"].get<std::string>();
  auto positive = [&](const char* key) -> std::optional<long> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_integer() || j[key].get<long>() <= 0) throw ParseError(std::string("'") + key + "' must be a positive integer");
    return j[key].get<long>();
  };
  if (auto N = positive("N")) d.N = static_cast<unsigned>(*N);
  if (auto n = positive("n")) d.n = static_cast<std::size_t>(*n);
  if (j.contains("G_kind")) d.G_kind = j["G_kind"].get<std::string>();
  if (j.contains("r")) d.r = j["r"].get<std::string>();
  const auto order = case_cyclotomic_order(d);
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParseError("'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) d.params[k] = json_scalar(v, order, "params." + k);
  }
  if (j.contains("G")) {
    const auto& rows = j["G"];
    if (!rows.is_array() || rows.empty()) throw ParseError("'G' must be a non-empty array of rows");
    std::vector<std::vector<Scalar>> m;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows.size()) throw ParseError("'G' must be square");
      std::vector<Scalar> r;
      for (const auto& x : row) r.push_back(json_scalar(x, order, "G entry"));
      m.push_back(std::move(r));
    }
    d.G = SpectralMatrix::from_rows(m);
  }
  return d;
}

std::vector<CatalogEntry> catalog() {
  auto entry = [](std::string label, std::string description) {
    CatalogEntry e{label, std::move(description), nullptr};
    e.build = [label] { return build_case(CaseDescriptor{label, {}, {}, {}, {}, {}, {}}); };
    return e;
  };
  return {
      entry("rational-g", "k = theta + nu G with G^N = 1, rational r, tau = omega nu (default N=2, theta=2, G=diag(1,-1))"),
      entry("id-2refl", "identity k, rational r, tau = (a nu + b)/(c nu - a) (default a=1, b=2, c=3)"),
      entry("id-3refl", "identity k, rational r, tau = (a nu + b)/(c nu + d), a^2+ad+bc+d^2=0 (default a=1, b=3, c=-1, d=1)"),
      entry("trig-2refl-id", "identity k, trigonometric r, 2-reflection (default a=1, b=2, c=3)"),
      entry("trig-2refl-diag", "k = diag(tau(nu), nu), trigonometric r, 2-reflection (default a=1, b=2, c=3)"),
      entry("trig-3refl-id", "identity k, trigonometric r, 3-reflection (default a=1, b=3, c=-1, d=1)"),
      entry("trig-3refl-tau-nu", "k = diag(tau(nu), nu), trigonometric r, 3-reflection"),
      entry("trig-3refl-tau2-nu", "k = diag(tau^2(nu), nu), trigonometric r, 3-reflection"),
      entry("trig-3refl-tau-tau2", "k = diag(tau(nu), tau^2(nu)), trigonometric r, 3-reflection"),
      entry("trig-3refl-poly-a", "k = diag((a+d)(a nu + b), (c nu - a)(d nu - b)), trigonometric r, 3-reflection"),
      entry("trig-3refl-poly-b", "k = diag((c nu - a)(d nu - b), (a+d)(c nu + d)), trigonometric r, 3-reflection"),
      entry("trivial", "N = 1, tau = id, k = 1; rbar reproduces the base r"),
  };
}

}  // namespace nrefl
