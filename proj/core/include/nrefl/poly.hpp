#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace nrefl {

/// Zero test and zero element for the coefficient rings used by Poly and Matrix.
template <class R>
struct RingTraits {
  static bool is_zero(const R& x) { return x.is_zero(); }
  static R zero() { return R{}; }
};

template <>
struct RingTraits<mpq_class> {
  static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
  static mpq_class zero() { return mpq_class(0); }
};

template <class R>
bool ring_is_zero(const R& x) {
  return RingTraits<R>::is_zero(x);
}

/// Dense univariate polynomial, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
template <class R>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(R value) { return Poly(std::vector<R>{std::move(value)}); }

  /// x^k with coefficient `value`.
  static Poly monomial(R value, std::size_t k) {
    std::vector<R> c(k + 1, RingTraits<R>::zero());
    c[k] = std::move(value);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : RingTraits<R>::zero(); }
  const R& leading() const { return c_.back(); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RingTraits<R>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RingTraits<R>::zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> out(a.c_.size() + b.c_.size() - 1, RingTraits<R>::zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (ring_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }

  /// Coefficient-wise product with an element of another ring (e.g. Scalar * SpinPoly).
  template <class S>
  Poly scaled(const S& s) const {
    std::vector<R> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x * s);
    return Poly(std::move(out));
  }

  template <class S, class Out = R>
  Poly<Out> scaled_into(const S& s) const {
    std::vector<Out> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(x * s);
    return Poly<Out>(std::move(out));
  }

  /// Horner evaluation at a point of a (possibly different) ring acting on R.
  template <class X>
  R eval(const X& x) const {
    R acc = RingTraits<R>::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(out));
  }

  /// Synthetic division by (x - root). Returns the quotient and stores the remainder.
  template <class X>
  Poly divide_linear(const X& root, R* remainder = nullptr) const {
    if (c_.empty()) {
      if (remainder) *remainder = RingTraits<R>::zero();
      return Poly();
    }
    std::vector<R> q(c_.size() - 1, RingTraits<R>::zero());
    R carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = c_[i] + carry * root;
    }
    if (remainder) *remainder = carry;
    return Poly(std::move(q));
  }

  /// First `count` Taylor coefficients about x0: p(x0 + t) = sum_k out[k] t^k.
  template <class X>
  std::vector<R> taylor(const X& x0, std::size_t count) const {
    std::vector<R> out;
    Poly cur = *this;
    for (std::size_t k = 0; k < count; ++k) {
      R rem;
      cur = cur.divide_linear(x0, &rem);
      out.push_back(std::move(rem));
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!ring_is_zero(R(a.c_[i] - b.c_[i]))) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

/// Quotient and remainder over a field coefficient ring.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& num, const Poly<R>& den) {
  std::vector<R> rem = num.coeffs();
  const int dd = den.degree();
  if (dd < 0) return {Poly<R>(), Poly<R>()};
  if (num.degree() < dd) return {Poly<R>(), num};
  std::vector<R> quot(rem.size() - static_cast<std::size_t>(dd), RingTraits<R>::zero());
  const R lead_inv = R(1) / den.leading();
  for (std::size_t i = rem.size(); i-- > static_cast<std::size_t>(dd);) {
    if (ring_is_zero(rem[i])) continue;
    R f = rem[i] * lead_inv;
    const std::size_t shift = i - static_cast<std::size_t>(dd);
    quot[shift] = f;
    for (int k = 0; k <= dd; ++k) rem[shift + static_cast<std::size_t>(k)] -= f * den.coeffs()[static_cast<std::size_t>(k)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly<R>(std::move(quot)), Poly<R>(std::move(rem))};
}

}  // namespace nrefl
