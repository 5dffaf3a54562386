#include "nrefl/spin.hpp"

#include <algorithm>
#include <sstream>

#include "nrefl/errors.hpp"

namespace nrefl {

std::string spin_var_name(std::size_t var) {
  static const char* comp[3] = {"sp", "sm", "sz"};
  return comp[var % 3] + std::to_string(var / 3 + 1);
}

Monomial::Monomial(std::vector<std::uint8_t> exps) : e_(std::move(exps)) { trim(); }

Monomial Monomial::var(std::size_t index, unsigned power) {
  std::vector<std::uint8_t> e(index + 1, 0);
  e[index] = static_cast<std::uint8_t>(power);
  return Monomial(std::move(e));
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto x : e_) d += x;
  return d;
}

void Monomial::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<std::uint8_t> e(std::max(a.e_.size(), b.e_.size()), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const unsigned s = a.exp(i) + b.exp(i);
    if (s > 255) throw StructuralError("spin monomial exponent overflow");
    e[i] = static_cast<std::uint8_t>(s);
  }
  return Monomial(std::move(e));
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::max(a.exps().size(), b.exps().size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = a.exp(i), y = b.exp(i);
    if (x != y) return x > y;
  }
  return false;
}

SpinPoly::SpinPoly(const Scalar& c) {
  if (!c.is_zero()) t_.emplace(Monomial(), c);
}

SpinPoly SpinPoly::gen(int site, Spin comp) {
  if (site < 1) throw StructuralError("spin sites are numbered from 1");
  return term(Scalar(1), Monomial::var(spin_var(site, comp)));
}

SpinPoly SpinPoly::term(const Scalar& c, const Monomial& m) {
  SpinPoly p;
  if (!c.is_zero()) p.t_.emplace(m, c);
  return p;
}

std::size_t SpinPoly::var_span() const {
  std::size_t n = 0;
  for (const auto& [m, _] : t_) n = std::max(n, m.exps().size());
  return n;
}

unsigned SpinPoly::degree() const {
  return t_.empty() ? 0 : t_.rbegin()->first.degree();
}

Scalar SpinPoly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar(0) : it->second;
}

void SpinPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

SpinPoly SpinPoly::operator-() const {
  SpinPoly out = *this;
  for (auto& [_, c] : out.t_) c = -c;
  return out;
}

SpinPoly& SpinPoly::operator+=(const SpinPoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

SpinPoly& SpinPoly::operator-=(const SpinPoly& o) {
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

SpinPoly operator*(const SpinPoly& a, const SpinPoly& b) {
  SpinPoly out;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) out.add_term(ma * mb, ca * cb);
  return out;
}

SpinPoly& SpinPoly::operator*=(const SpinPoly& o) { return *this = *this * o; }

SpinPoly& SpinPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [_, c] : t_) c *= s;
  return *this;
}

SpinPoly SpinPoly::derivative(std::size_t var) const {
  SpinPoly out;
  for (const auto& [m, c] : t_) {
    const unsigned e = m.exp(var);
    if (e == 0) continue;
    std::vector<std::uint8_t> ex = m.exps();
    ex[var] = static_cast<std::uint8_t>(e - 1);
    out.add_term(Monomial(std::move(ex)), c * Scalar(static_cast<int>(e)));
  }
  return out;
}

std::vector<SpinPoly> SpinPoly::gradient(std::size_t vars) const {
  std::vector<SpinPoly> g;
  g.reserve(vars);
  for (std::size_t v = 0; v < vars; ++v) g.push_back(derivative(v));
  return g;
}

Scalar SpinPoly::evaluate(const std::map<std::size_t, Scalar>& values) const {
  Scalar acc(0);
  for (const auto& [m, c] : t_) {
    Scalar t = c;
    for (std::size_t v = 0; v < m.exps().size(); ++v) {
      const unsigned e = m.exps()[v];
      if (e == 0) continue;
      auto it = values.find(v);
      if (it == values.end()) throw ParseError("no value assigned to " + spin_var_name(v));
      t *= it->second.pow(e);
    }
    acc += t;
  }
  return acc;
}

std::complex<double> SpinPoly::evaluate(const std::vector<std::complex<double>>& point) const {
  if (var_span() > point.size()) throw ParseError("no value assigned to " + spin_var_name(point.size()));
  std::complex<double> acc = 0;
  for (const auto& [m, c] : t_) {
    std::complex<double> t = c.to_complex();
    for (std::size_t v = 0; v < m.exps().size(); ++v)
      for (unsigned k = 0; k < m.exps()[v]; ++k) t *= point[v];
    acc += t;
  }
  return acc;
}

std::string SpinPoly::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    std::string cs = c.to_string();
    const bool compound = !c.is_rational();
    bool negative = !compound && sgn(c.rational()) < 0;
    if (negative) cs = (-c).to_string();
    if (compound) cs = "(" + cs + ")";
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::string vars;
    for (std::size_t v = 0; v < m.exps().size(); ++v) {
      const unsigned e = m.exps()[v];
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += spin_var_name(v);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty())
      os << cs;
    else if (cs == "1")
      os << vars;
    else
      os << cs << "*" << vars;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SpinPoly& p) { return os << p.to_string(); }

SpinPoly poisson_bracket(const SpinPoly& f, const SpinPoly& g) {
  const int sites = std::min(f.max_site(), g.max_site());
  SpinPoly out;
  for (int j = 1; j <= sites; ++j) {
    const std::size_t p = spin_var(j, Spin::plus), m = spin_var(j, Spin::minus), z = spin_var(j, Spin::z);
    const SpinPoly fp = f.derivative(p), fm = f.derivative(m), fz = f.derivative(z);
    const SpinPoly gp = g.derivative(p), gm = g.derivative(m), gz = g.derivative(z);
    const SpinPoly sp = SpinPoly::splus(j), sm = SpinPoly::sminus(j), sz = SpinPoly::sz(j);
    // {+,-} = z, {z,+} = 2+, {z,-} = -2-, and antisymmetry.
    out += (fp * gm - fm * gp) * sz;
    out += (fz * gp - fp * gz) * (Scalar(2) * sp);
    out -= (fz * gm - fm * gz) * (Scalar(2) * sm);
  }
  return out;
}

SpinPoly casimir(int site, int sites) {
  if (site < 1 || site > sites) throw StructuralError("casimir site " + std::to_string(site) + " out of range 1.." + std::to_string(sites));
  return Scalar::ratio(1, 2) * SpinPoly::sz(site) * SpinPoly::sz(site) + Scalar(2) * SpinPoly::splus(site) * SpinPoly::sminus(site);
}

SpinPoly pair_coupling(int i, int k) {
  return Scalar::ratio(1, 2) * SpinPoly::sz(i) * SpinPoly::sz(k) + SpinPoly::splus(i) * SpinPoly::sminus(k) +
         SpinPoly::sminus(i) * SpinPoly::splus(k);
}

CompiledPoly::CompiledPoly(const SpinPoly& p) {
  for (const auto& [m, c] : p.terms()) {
    Term t{c.to_complex(), {}};
    for (std::size_t v = 0; v < m.exps().size(); ++v)
      if (m.exps()[v]) t.factors.emplace_back(static_cast<std::uint32_t>(v), m.exps()[v]);
    terms_.push_back(std::move(t));
  }
}

std::complex<double> CompiledPoly::operator()(const std::vector<std::complex<double>>& x) const {
  std::complex<double> acc = 0;
  for (const auto& t : terms_) {
    std::complex<double> v = t.coeff;
    for (const auto& [var, e] : t.factors)
      for (unsigned k = 0; k < e; ++k) v *= x[var];
    acc += v;
  }
  return acc;
}

}  // namespace nrefl
