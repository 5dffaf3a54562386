#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrefl/scalar.hpp"

namespace nrefl {

/// Spin generator component at a site.
enum class Spin : int { plus = 0, minus = 1, z = 2 };

/// Variable index of s_site^comp, sites numbered from 1.
inline std::size_t spin_var(int site, Spin comp) {
  return static_cast<std::size_t>(3 * (site - 1) + static_cast<int>(comp));
}

std::string spin_var_name(std::size_t var);

/// Exponent vector over the spin variables, trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint8_t> exps);
  static Monomial var(std::size_t index, unsigned power = 1);

  const std::vector<std::uint8_t>& exps() const { return e_; }
  unsigned exp(std::size_t var) const { return var < e_.size() ? e_[var] : 0; }
  unsigned degree() const;
  bool is_one() const { return e_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void trim();
  std::vector<std::uint8_t> e_;
};

/// Graded lexicographic: lower total degree first, then lexicographic on exponents.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Commutative polynomial in s_j^+, s_j^-, s_j^z with Scalar coefficients.
class SpinPoly {
 public:
  using Terms = std::map<Monomial, Scalar, GradedLex>;

  SpinPoly() = default;
  SpinPoly(int c) : SpinPoly(Scalar(c)) {}
  SpinPoly(const Scalar& c);

  static SpinPoly gen(int site, Spin comp);
  static SpinPoly splus(int site) { return gen(site, Spin::plus); }
  static SpinPoly sminus(int site) { return gen(site, Spin::minus); }
  static SpinPoly sz(int site) { return gen(site, Spin::z); }
  static SpinPoly term(const Scalar& c, const Monomial& m);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  /// Number of variables spanned (highest variable index + 1).
  std::size_t var_span() const;
  /// Highest site index that occurs, 0 for constants.
  int max_site() const { return static_cast<int>((var_span() + 2) / 3); }
  unsigned degree() const;
  Scalar coeff(const Monomial& m) const;

  SpinPoly operator-() const;
  SpinPoly& operator+=(const SpinPoly& o);
  SpinPoly& operator-=(const SpinPoly& o);
  SpinPoly& operator*=(const SpinPoly& o);
  SpinPoly& operator*=(const Scalar& s);
  friend SpinPoly operator+(SpinPoly a, const SpinPoly& b) { return a += b; }
  friend SpinPoly operator-(SpinPoly a, const SpinPoly& b) { return a -= b; }
  friend SpinPoly operator*(const SpinPoly& a, const SpinPoly& b);
  friend SpinPoly operator*(SpinPoly a, const Scalar& s) { return a *= s; }
  friend SpinPoly operator*(const Scalar& s, SpinPoly a) { return a *= s; }
  friend bool operator==(const SpinPoly& a, const SpinPoly& b) { return a.t_ == b.t_; }

  /// Formal partial derivative with respect to a variable index.
  SpinPoly derivative(std::size_t var) const;
  /// One partial derivative per variable index below `vars`.
  std::vector<SpinPoly> gradient(std::size_t vars) const;

  /// Exact value; ParseError naming the first variable without an assigned value.
  Scalar evaluate(const std::map<std::size_t, Scalar>& values) const;
  /// Floating value at a point indexed by variable index.
  std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Scalar& c);
  Terms t_;
};

std::ostream& operator<<(std::ostream& os, const SpinPoly& p);

/// {F, G} for the su(2) Lie-Poisson bracket, site by site via the Leibniz rule.
SpinPoly poisson_bracket(const SpinPoly& f, const SpinPoly& g);

/// 1/2 (s_j^z)^2 + 2 s_j^+ s_j^-
SpinPoly casimir(int site, int sites);

/// S_ik = 1/2 s_i^z s_k^z + s_i^+ s_k^- + s_i^- s_k^+ (S_ii = casimir(i)).
SpinPoly pair_coupling(int i, int k);

/// Sum of terms with complex coefficients, compiled for repeated floating evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const SpinPoly& p);
  std::complex<double> operator()(const std::vector<std::complex<double>>& x) const;

 private:
  struct Term {
    std::complex<double> coeff;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> factors;
  };
  std::vector<Term> terms_;
};

}  // namespace nrefl
