#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nrefl/poly.hpp"

namespace nrefl {

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string render(const Rational& q);

/// Phi_N, computed as (x^N - 1) / prod_{d | N, d < N} Phi_d. Monic with integer coefficients.
Poly<Rational> cyclotomic_polynomial(int order);

/// Euler phi(N) == degree of Phi_N.
int euler_phi(int order);

/// Element of Q(zeta_N), stored in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class Cyclotomic {
 public:
  explicit Cyclotomic(int order);
  /// Reduces an arbitrary-length coefficient vector modulo Phi_N.
  Cyclotomic(int order, std::vector<Rational> coeffs);

  static Cyclotomic zeta(int order);
  static Cyclotomic zeta_power(int order, long k);
  static Cyclotomic from_rational(int order, const Rational& q);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True when only the constant coefficient can be nonzero.
  bool is_rational() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Extended Euclid on (u, Phi_N). Throws DivisionByZero on zero.
  Cyclotomic inverse() const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  void check_order(const Cyclotomic& o) const;

  int order_;
  std::vector<Rational> coeffs_;
};

/// Exact scalar: a rational, or an element of Q(zeta_N).
///
/// Mixed arithmetic promotes rationals into Q(zeta_N). Results whose cyclotomic
/// part collapses to a constant are demoted back to Rational, so equality and
/// ordering never depend on how a value was produced. Two distinct cyclotomic
/// orders never mix.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int v) : v_(Rational(v)) {}
  Scalar(long v) : v_(Rational(v)) {}
  Scalar(const Rational& q) : v_(q) {}
  Scalar(Rational&& q) : v_(std::move(q)) {}
  Scalar(const Cyclotomic& c);

  static Scalar ratio(long num, long den) { return Scalar(make_rational(num, den)); }
  static Scalar zeta(int order) { return Scalar(Cyclotomic::zeta(order)); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const;
  const Cyclotomic* cyclotomic() const { return std::get_if<Cyclotomic>(&v_); }
  /// 1 for rationals.
  int order() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar pow(long k) const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

  /// Canonical total order (not a numeric order for cyclotomic values):
  /// rationals first by value, then cyclotomics by order and coefficient vector.
  friend bool canonical_less(const Scalar& a, const Scalar& b);

 private:
  void normalize();

  std::variant<Rational, Cyclotomic> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses "p/q", integers, and (when `order` is given) sums of terms like
/// "3/2*z^2", "-z", "1 + 2*z" where z stands for zeta_order.
Scalar parse_scalar(std::string_view text, std::optional<int> order = std::nullopt);

}  // namespace nrefl
