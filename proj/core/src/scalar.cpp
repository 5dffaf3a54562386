#include "nrefl/scalar.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "nrefl/errors.hpp"

namespace nrefl {

Rational make_rational(long num, long den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string render(const Rational& q) { return q.get_str(); }

Poly<Rational> cyclotomic_polynomial(int order) {
  if (order < 1) throw StructuralError("cyclotomic order must be positive");
  std::vector<Rational> xn(static_cast<std::size_t>(order) + 1, Rational(0));
  xn[0] = -1;
  xn[static_cast<std::size_t>(order)] = 1;
  Poly<Rational> acc(std::move(xn));
  for (int d = 1; d < order; ++d) {
    if (order % d != 0) continue;
    acc = divmod(acc, cyclotomic_polynomial(d)).first;
  }
  return acc;
}

int euler_phi(int order) {
  int result = order, m = order;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

const Poly<Rational>& cached_phi(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Poly<Rational>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<Poly<Rational>>(cyclotomic_polynomial(order));
  return *slot;
}

/// In-place reduction modulo a monic modulus.
void reduce_mod(std::vector<Rational>& c, const Poly<Rational>& modulus) {
  const std::size_t deg = static_cast<std::size_t>(modulus.degree());
  const auto& m = modulus.coeffs();
  for (std::size_t i = c.size(); i-- > deg;) {
    if (sgn(c[i]) == 0) continue;
    const Rational f = c[i];
    for (std::size_t k = 0; k < deg; ++k) c[i - deg + k] -= f * m[k];
    c[i] = 0;
  }
  c.resize(deg, Rational(0));
}

}  // namespace

Cyclotomic::Cyclotomic(int order) : order_(order) {
  if (order < 1) throw StructuralError("cyclotomic order must be positive");
  coeffs_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
}

Cyclotomic::Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  if (order < 1) throw StructuralError("cyclotomic order must be positive");
  reduce_mod(coeffs_, cached_phi(order));
}

Cyclotomic Cyclotomic::zeta(int order) { return zeta_power(order, 1); }

Cyclotomic Cyclotomic::zeta_power(int order, long k) {
  long e = k % order;
  if (e < 0) e += order;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c[static_cast<std::size_t>(e)] = 1;
  return Cyclotomic(order, std::move(c));
}

Cyclotomic Cyclotomic::from_rational(int order, const Rational& q) { return Cyclotomic(order, {q}); }

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return false;
  return true;
}

void Cyclotomic::check_order(const Cyclotomic& o) const {
  if (o.order_ != order_)
    throw StructuralError("cyclotomic order mismatch: " + std::to_string(order_) + " vs " + std::to_string(o.order_));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  check_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  check_order(o);
  const std::size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  reduce_mod(prod, cached_phi(order_));
  coeffs_ = std::move(prod);
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  a.check_order(b);
  return a.coeffs_ == b.coeffs_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(order_) + ")");
  // Invariant: s_i * u == r_i (mod Phi_N).
  Poly<Rational> r0 = cached_phi(order_);
  Poly<Rational> r1{std::vector<Rational>(coeffs_)};
  Poly<Rational> s0, s1 = Poly<Rational>::constant(Rational(1));
  while (r1.degree() > 0) {
    auto [q, rem] = divmod(r0, r1);
    Poly<Rational> s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant because Phi_N is irreducible.
  const Rational inv = 1 / r1.leading();
  std::vector<Rational> out;
  for (const auto& c : s1.coeffs()) out.push_back(c * inv);
  return Cyclotomic(order_, std::move(out));
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> acc = 0;
  const double step = 2.0 * std::numbers::pi / order_;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    acc += coeffs_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    std::string term;
    if (k == 0) {
      term = c.get_str();
    } else {
      if (c == 1)
        term = "";
      else if (c == -1)
        term = "-";
      else
        term = c.get_str() + "*";
      term += k == 1 ? "z" : "z^" + std::to_string(k);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

Scalar::Scalar(const Cyclotomic& c) : v_(c) { normalize(); }

void Scalar::normalize() {
  if (auto* c = std::get_if<Cyclotomic>(&v_); c && c->is_rational()) {
    Rational q = c->coeffs().empty() ? Rational(0) : c->coeffs()[0];
    v_ = std::move(q);
  }
}

const Rational& Scalar::rational() const {
  if (auto* q = std::get_if<Rational>(&v_)) return *q;
  throw StructuralError("scalar " + to_string() + " is not rational");
}

int Scalar::order() const {
  if (auto* c = cyclotomic()) return c->order();
  return 1;
}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<Rational>(&v_)) return sgn(*q) == 0;
  return std::get<Cyclotomic>(v_).is_zero();
}

bool Scalar::is_one() const {
  auto* q = std::get_if<Rational>(&v_);
  return q && *q == 1;
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<Rational>(&v_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<Cyclotomic>(v_));
}

namespace {

template <class Op>
void combine(std::variant<Rational, Cyclotomic>& lhs, const std::variant<Rational, Cyclotomic>& rhs, Op op) {
  auto* lq = std::get_if<Rational>(&lhs);
  auto* rq = std::get_if<Rational>(&rhs);
  if (lq && rq) {
    op(*lq, *rq);
    return;
  }
  if (lq) {
    const auto& rc = std::get<Cyclotomic>(rhs);
    Cyclotomic promoted = Cyclotomic::from_rational(rc.order(), *lq);
    op(promoted, rc);
    lhs = std::move(promoted);
    return;
  }
  auto& lc = std::get<Cyclotomic>(lhs);
  if (rq) {
    op(lc, Cyclotomic::from_rational(lc.order(), *rq));
  } else {
    op(lc, std::get<Cyclotomic>(rhs));
  }
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  combine(v_, o.v_, [](auto& a, const auto& b) { a += b; });
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  combine(v_, o.v_, [](auto& a, const auto& b) { a -= b; });
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  combine(v_, o.v_, [](auto& a, const auto& b) { a *= b; });
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

Scalar Scalar::inverse() const {
  if (auto* q = std::get_if<Rational>(&v_)) {
    if (sgn(*q) == 0) throw DivisionByZero("division by zero");
    return Scalar(Rational(1 / *q));
  }
  return Scalar(std::get<Cyclotomic>(v_).inverse());
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::complex<double> Scalar::to_complex() const {
  if (auto* q = std::get_if<Rational>(&v_)) return {q->get_d(), 0.0};
  return std::get<Cyclotomic>(v_).to_complex();
}

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<Rational>(&v_)) return q->get_str();
  return std::get<Cyclotomic>(v_).to_string();
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  const bool ar = a.is_rational(), br = b.is_rational();
  if (ar != br) return ar;
  if (ar) return a.rational() < b.rational();
  const auto& ac = *a.cyclotomic();
  const auto& bc = *b.cyclotomic();
  if (ac.order() != bc.order()) return ac.order() < bc.order();
  for (std::size_t i = 0; i < ac.coeffs().size(); ++i) {
    if (ac.coeffs()[i] != bc.coeffs()[i]) return ac.coeffs()[i] < bc.coeffs()[i];
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

namespace {

Rational parse_rational_token(std::string_view tok, std::string_view whole) {
  if (tok.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  for (char ch : tok) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/')
      throw ParseError("unexpected character '" + std::string(1, ch) + "' in '" + std::string(whole) + "'");
  }
  Rational q;
  if (q.set_str(std::string(tok), 10) != 0) throw ParseError("malformed number '" + std::string(tok) + "'");
  if (sgn(q.get_den()) == 0) throw DivisionByZero("zero denominator in '" + std::string(whole) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Scalar parse_scalar(std::string_view text, std::optional<int> order) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty scalar");

  Scalar total(0);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw ParseError("expected '+' or '-' in '" + s + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    pos = end;

    Rational coeff(1);
    long power = 0;
    const auto zpos = term.find('z');
    if (zpos == std::string_view::npos) {
      coeff = parse_rational_token(term, text);
    } else {
      if (!order) throw ParseError("'z' is only meaningful for a cyclotomic case: '" + s + "'");
      std::string_view head = term.substr(0, zpos);
      std::string_view tail = term.substr(zpos + 1);
      if (!head.empty()) {
        if (head.back() != '*') throw ParseError("expected '*' before z in '" + s + "'");
        coeff = parse_rational_token(head.substr(0, head.size() - 1), text);
      }
      power = 1;
      if (!tail.empty()) {
        if (tail.front() != '^') throw ParseError("expected '^' after z in '" + s + "'");
        power = parse_rational_token(tail.substr(1), text).get_num().get_si();
      }
    }
    if (sign < 0) coeff = -coeff;
    if (power == 0) {
      total += Scalar(coeff);
    } else {
      total += Scalar(coeff) * Scalar(Cyclotomic::zeta_power(*order, power));
    }
  }
  return total;
}

}  // namespace nrefl
