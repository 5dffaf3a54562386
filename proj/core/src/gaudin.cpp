#include "nrefl/gaudin.hpp"

#include <json.hpp>

#include <set>

namespace nrefl {

std::string to_string(GaudinMode mode) {
  switch (mode) {
    case GaudinMode::generic: return "generic";
    case GaudinMode::two_reflection: return "two-reflection";
    case GaudinMode::three_reflection: return "three-reflection";
    case GaudinMode::bcl: return "bcl";
    case GaudinMode::z3: return "z3";
  }
  return "?";
}

GaudinMode parse_gaudin_mode(const std::string& name) {
  if (name == "two-reflection") return GaudinMode::two_reflection;
  if (name == "three-reflection") return GaudinMode::three_reflection;
  if (name == "bcl") return GaudinMode::bcl;
  if (name == "z3") return GaudinMode::z3;
  throw ParseError("unknown model case '" + name + "' (expected two-reflection, three-reflection, bcl or z3)");
}

namespace {

Scalar json_scalar(const nlohmann::json& v, std::optional<int> order, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (v.is_string()) return parse_scalar(v.get<std::string>(), order);
  throw ParseError(where + ": expected an integer or an exact string such as \"5/3\"");
}

std::complex<double> json_complex(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  throw ParseError(where + ": expected a number or [re, im]");
}

}  // namespace

GaudinConfig parse_gaudin_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model config must be a JSON object");
  static const std::set<std::string> keys = {"case", "params", "L", "z", "casimirs", "initial"};
  for (const auto& [k, _] : j.items())
    if (!keys.count(k)) throw ParseError("unknown model config field '" + k + "'");
  GaudinConfig cfg;
  if (!j.contains("case") || !j["case"].is_string()) throw ParseError("model config needs a string 'case'");
  cfg.mode = parse_gaudin_mode(j["case"].get<std::string>());
  const std::optional<int> order = cfg.mode == GaudinMode::z3 ? std::optional<int>(3) : std::nullopt;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ParseError("'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) cfg.params[k] = json_scalar(v, order, "params." + k);
  }
  if (!j.contains("z") || !j["z"].is_array() || j["z"].empty()) throw ParseError("model config needs a non-empty array 'z'");
  for (const auto& v : j["z"]) cfg.z.push_back(json_scalar(v, order, "z"));
  if (j.contains("L")) {
    if (!j["L"].is_number_integer() || j["L"].get<long>() != static_cast<long>(cfg.z.size()))
      throw ParseError("'L' must equal the number of sites in 'z'");
  }
  if (j.contains("casimirs")) {
    if (!j["casimirs"].is_array() || j["casimirs"].size() != cfg.z.size()) throw ParseError("'casimirs' must list one value per site");
    for (const auto& v : j["casimirs"]) cfg.casimirs.push_back(json_scalar(v, order, "casimirs"));
  }
  if (j.contains("initial")) {
    const auto& init = j["initial"];
    if (!init.is_array() || init.size() != cfg.z.size()) throw ParseError("'initial' must list one [sp, sm, sz] triple per site");
    std::vector<std::array<std::complex<double>, 3>> s;
    for (const auto& t : init) {
      if (!t.is_array() || t.size() != 3) throw ParseError("'initial' entries must be [sp, sm, sz]");
      s.push_back({json_complex(t[0], "initial"), json_complex(t[1], "initial"), json_complex(t[2], "initial")});
    }
    cfg.initial = std::move(s);
  }
  return cfg;
}

// ---- model ---------------------------------------------------------------------

GaudinModel::GaudinModel(KSolution ks, std::vector<Scalar> z, GaudinMode mode, std::vector<Scalar> casimir_values)
    : ks_(std::move(ks)), z_(std::move(z)), mode_(mode), casimir_values_(std::move(casimir_values)), rbar_(rational_r(2)) {
  if (ks_.n != 2 || ks_.base_r.kind() != RKind::rational || !ks_.identity_k)
    throw ConstraintError("Gaudin models need an identity-k solution for the rational r-matrix on C^2");
  if (z_.empty()) throw ConstraintError("a model needs at least one site");
  if (!casimir_values_.empty() && casimir_values_.size() != z_.size())
    throw ConstraintError("casimir values must list one value per site");
  for (std::size_t i = 0; i < z_.size(); ++i)
    for (std::size_t k = i + 1; k < z_.size(); ++k)
      if (z_[i] == z_[k]) throw ConstraintError("sites must be mutually distinct (z_" + std::to_string(i + 1) + " = z_" + std::to_string(k + 1) + ")");
  for (std::size_t m = 0; m < z_.size(); ++m) {
    const std::string site = "site z_" + std::to_string(m + 1) + " = " + z_[m].to_string();
    for (unsigned j = 0; j < ks_.N; ++j) {
      if (ks_.weights.symbolic(j).multiplicity_at(z_[m]) > 0)
        throw ConstraintError(site + " is a pole of g^(" + std::to_string(j) + ")");
      if (j == 0) continue;
      if (ks_.tau.iterate(j).is_pole(z_[m])) throw ConstraintError(site + " is a pole of tau^" + std::to_string(j));
      const Scalar image = ks_.tau.iterate(j)(z_[m]);
      for (std::size_t k = 0; k < z_.size(); ++k)
        if (image == z_[k])
          throw ConstraintError(site + " has tau^" + std::to_string(j) + " image on site z_" + std::to_string(k + 1));
    }
  }
  rbar_ = build_rbar(ks_.base_r, ks_);
}

GaudinModel GaudinModel::two_reflection(const Scalar& a, const Scalar& b, const Scalar& c, std::vector<Scalar> z) {
  return GaudinModel(identity_two_reflection(a, b, c), std::move(z), GaudinMode::two_reflection);
}

GaudinModel GaudinModel::three_reflection(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, std::vector<Scalar> z) {
  return GaudinModel(identity_three_reflection(a, b, c, d), std::move(z), GaudinMode::three_reflection);
}

GaudinModel GaudinModel::bcl(std::vector<Scalar> z, const Scalar& a) {
  return GaudinModel(identity_two_reflection(a, 0, 0), std::move(z), GaudinMode::bcl);
}

GaudinModel GaudinModel::z3(std::vector<Scalar> z) {
  return GaudinModel(identity_three_reflection(Scalar::zeta(3), 0, 0, 1), std::move(z), GaudinMode::z3);
}

GaudinModel GaudinModel::from_config(const GaudinConfig& cfg) {
  auto p = [&](const char* name, long fallback) {
    auto it = cfg.params.find(name);
    return it == cfg.params.end() ? Scalar(fallback) : it->second;
  };
  auto allow = [&](std::set<std::string> names) {
    for (const auto& [k, _] : cfg.params)
      if (!names.count(k)) throw ParseError("model case " + to_string(cfg.mode) + " has no parameter '" + k + "'");
  };
  KSolution ks;
  switch (cfg.mode) {
    case GaudinMode::two_reflection:
      allow({"a", "b", "c"});
      ks = identity_two_reflection(p("a", 1), p("b", 2), p("c", 3));
      break;
    case GaudinMode::three_reflection:
      allow({"a", "b", "c", "d"});
      ks = identity_three_reflection(p("a", 1), p("b", 3), p("c", -1), p("d", 1));
      break;
    case GaudinMode::bcl:
      allow({"a"});
      ks = identity_two_reflection(p("a", 1), 0, 0);
      break;
    case GaudinMode::z3:
      allow({});
      ks = identity_three_reflection(Scalar::zeta(3), 0, 0, 1);
      break;
    case GaudinMode::generic:
      throw ParseError("generic models cannot be described by a config");
  }
  return GaudinModel(std::move(ks), cfg.z, cfg.mode, cfg.casimirs);
}

const Scalar& GaudinModel::param(const std::string& name) const {
  return ks_.params.at(name);
}

SpinMatrix GaudinModel::local_lax(int m, const Scalar& nu) const {
  if (m < 1 || m > L()) throw StructuralError("site index " + std::to_string(m) + " out of range");
  if (nu.is_zero()) throw PoleError("local Lax matrix of site " + std::to_string(m) + " has a pole at 0");
  const Scalar inv = nu.inverse();
  const Scalar half = inv * Scalar::ratio(1, 2);
  return SpinMatrix::from_rows({{SpinPoly::sz(m) * half, SpinPoly::splus(m) * inv},
                                {SpinPoly::sminus(m) * inv, SpinPoly::sz(m) * (-half)}});
}

Scalar GaudinModel::site_weight(int m, const Scalar& lambda) const {
  Scalar acc(0);
  for (unsigned j = 0; j < ks_.N; ++j) {
    const std::string where = "B term (j=" + std::to_string(j) + ", m=" + std::to_string(m) + ")";
    try {
      const Scalar shifted = ks_.tau.apply_iterate(j, lambda) - z_[static_cast<std::size_t>(m - 1)];
      if (shifted.is_zero()) throw PoleError("tau^j(lambda) = z_m");
      acc += ks_.weights(j, lambda) / shifted;
    } catch (const PoleError& e) {
      throw PoleError(where + " at lambda = " + lambda.to_string() + ": " + e.what());
    }
  }
  return acc;
}

RatFun<Scalar> GaudinModel::site_weight_symbolic(int m) const {
  RatFun<Scalar> acc;
  for (unsigned j = 0; j < ks_.N; ++j)
    acc += ks_.weights.symbolic(j) * ks_.tau.iterate(j).inverse_shift(z_[static_cast<std::size_t>(m - 1)]);
  return acc;
}

namespace {

/// [[s^z/2, s^+], [s^-, -s^z/2]]
SpinMatrix site_matrix(int m) {
  const Scalar half = Scalar::ratio(1, 2);
  return SpinMatrix::from_rows({{SpinPoly::sz(m) * half, SpinPoly::splus(m)}, {SpinPoly::sminus(m), SpinPoly::sz(m) * (-half)}});
}

}  // namespace

SpinMatrix GaudinModel::big_B(const Scalar& lambda) const {
  SpinMatrix b(2);
  for (int m = 1; m <= L(); ++m) b += site_matrix(m).scaled(site_weight(m, lambda));
  return b;
}

Matrix<RatFun<SpinPoly>> GaudinModel::big_B_symbolic() const {
  Matrix<RatFun<SpinPoly>> b(2);
  for (int m = 1; m <= L(); ++m) {
    const RatFun<Scalar> w = site_weight_symbolic(m);
    const SpinMatrix s = site_matrix(m);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) += w.times(s(i, j));
  }
  return b;
}

RatFun<SpinPoly> GaudinModel::trace_B_squared() const {
  return (big_B_symbolic() * big_B_symbolic()).trace();
}

SpinPoly GaudinModel::hamiltonian_residue(int m) const {
  if (m < 1 || m > L()) throw StructuralError("site index " + std::to_string(m) + " out of range");
  return trace_B_squared().residue(z_[static_cast<std::size_t>(m - 1)]) * Scalar::ratio(1, 2);
}

SpinPoly GaudinModel::hamiltonian_explicit(int i) const {
  if (i < 1 || i > L()) throw StructuralError("site index " + std::to_string(i) + " out of range");
  const Scalar& zi = z_[static_cast<std::size_t>(i - 1)];
  auto div = [&](const Scalar& num, const Scalar& den) {
    if (den.is_zero()) throw ConstraintError("H_" + std::to_string(i) + " has a pole in a closed-form coefficient");
    return num / den;
  };
  std::function<Scalar(const Scalar&)> pair_coef;
  Scalar self_coef;
  switch (mode_) {
    case GaudinMode::two_reflection: {
      const Scalar &a = param("a"), &b = param("b"), &c = param("c");
      const Scalar e = a * a + b * c;
      pair_coef = [=](const Scalar& zk) {
        return div(1, zi - zk) + div(e, (a - c * zi) * (b + a * (zi + zk) - c * zi * zk));
      };
      self_coef = div(e, (a - c * zi) * (b + Scalar(2) * a * zi - c * zi * zi));
      break;
    }
    case GaudinMode::three_reflection: {
      const Scalar &a = param("a"), &b = param("b"), &c = param("c"), &d = param("d");
      const Scalar e = a * d - b * c;
      pair_coef = [=](const Scalar& zk) {
        return div(1, zi - zk) + div(e, (d + c * zi) * (b + a * zi - d * zk - c * zi * zk)) -
               div(e, (a - c * zi) * (b + a * zk - d * zi - c * zi * zk));
      };
      self_coef = div(e, b + (a - d) * zi - c * zi * zi) * (div(1, d + c * zi) - div(1, a - c * zi));
      break;
    }
    case GaudinMode::bcl:
      pair_coef = [=](const Scalar& zk) { return div(1, zi - zk) + div(1, zi + zk); };
      self_coef = div(1, Scalar(2) * zi);
      break;
    case GaudinMode::z3: {
      const Scalar w = Scalar::zeta(3);
      pair_coef = [=](const Scalar& zk) { return div(1, zi - zk) + div(1, zi - w * zk) + div(1, zi - w * w * zk); };
      self_coef = div(1, zi);
      break;
    }
    case GaudinMode::generic:
      throw ConstraintError("no closed-form Hamiltonian for a generic model");
  }
  SpinPoly h = casimir(i) * self_coef;
  for (int k = 1; k <= L(); ++k)
    if (k != i) h += pair_coupling(i, k) * pair_coef(z_[static_cast<std::size_t>(k - 1)]);
  return h;
}

// ---- identities ----------------------------------------------------------------

SpinMatrix tensor_bracket(const SpinMatrix& a, const SpinMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw StructuralError("tensor_bracket dimension mismatch");
  SpinMatrix out(Legs::pair(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = poisson_bracket(a(i, j), b(k, l));
  return out;
}

SpinMatrix bracket_with(const SpinPoly& f, const SpinMatrix& b) {
  return b.map([&](const SpinPoly& x) { return poisson_bracket(f, x); });
}

SpinMatrix local_poisson_residual(const GaudinModel& model, int m, const Scalar& lambda, const Scalar& mu) {
  const SpinMatrix la = model.local_lax(m, lambda), lb = model.local_lax(m, mu);
  const SpectralMatrix r = rational_r(2)(lambda, mu);
  return tensor_bracket(la, lb) - commutator(r, embed_first(la) + embed_second(lb));
}

SpinPoly trace_power(const SpinMatrix& b, unsigned p) {
  return matrix_power(b, p).trace();
}

SpinPoly involution_residual(const GaudinModel& model, int i, int k) {
  return poisson_bracket(model.hamiltonian_residue(i), model.hamiltonian_residue(k));
}

SpinPoly trB_bracket_residual(const GaudinModel& model, unsigned p, unsigned q, const Scalar& lambda, const Scalar& nu) {
  return poisson_bracket(trace_power(model.big_B(lambda), p), trace_power(model.big_B(nu), q));
}

SpinMatrix rbb_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& mu) {
  const SpinMatrix bl = model.big_B(lambda), bm = model.big_B(mu);
  const SpinMatrix ba = embed_first(bl), bb = embed_second(bm);
  const SpectralMatrix r_ab = model.rbar()(lambda, mu);
  const SpectralMatrix r_ba = swap_legs(model.rbar()(mu, lambda));
  return tensor_bracket(bl, bm) - commutator(r_ab, ba) + commutator(r_ba, bb);
}

SpinMatrix m_matrix(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p) {
  if (p == 0) throw StructuralError("M needs p >= 1");
  const SpinMatrix bp = embed_first(matrix_power(model.big_B(lambda), p - 1));
  const SpectralMatrix r_ba = swap_legs(model.rbar()(nu, lambda));
  return partial_trace((bp * r_ba).with_legs(Legs::pair(2)), 0).scaled(Scalar(static_cast<int>(p)));
}

SpinMatrix lax_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p) {
  const SpinMatrix bn = model.big_B(nu);
  return bracket_with(trace_power(model.big_B(lambda), p), bn) - commutator(bn, m_matrix(model, lambda, nu, p));
}

SpinMatrix mk_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p) {
  const KSolution& ks = model.solution();
  const SpectralMatrix k = ks.k_at(nu);
  return m_matrix(model, lambda, nu, p) * k - k * m_matrix(model, lambda, ks.tau(nu), p);
}

std::optional<std::vector<Scalar>> pair_decomposition(const SpinPoly& h, int i, int sites) {
  std::vector<Scalar> c(static_cast<std::size_t>(sites), Scalar(0));
  SpinPoly rest = h;
  for (int k = 1; k <= sites; ++k) {
    const Monomial mono = Monomial::var(spin_var(i, Spin::plus)) * Monomial::var(spin_var(k, Spin::minus));
    // S_ik carries s_i^+ s_k^- with coefficient 1; the Casimir carries s_i^+ s_i^- with 2.
    Scalar coef = h.coeff(mono);
    if (k == i) coef = coef * Scalar::ratio(1, 2);
    c[static_cast<std::size_t>(k - 1)] = coef;
    rest -= (k == i ? casimir(i, sites) : pair_coupling(i, k)) * coef;
  }
  if (!rest.is_zero()) return std::nullopt;
  return c;
}

}  // namespace nrefl
