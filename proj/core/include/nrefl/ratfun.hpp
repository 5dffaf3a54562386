#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "nrefl/errors.hpp"
#include "nrefl/poly.hpp"
#include "nrefl/scalar.hpp"

namespace nrefl {

/// (lambda - root)^multiplicity
struct LinearFactor {
  Scalar root;
  int multiplicity = 1;
};

/// Rational function of one spectral variable with split-linear denominator:
///
///   numerator(lambda) / (lead * prod_i (lambda - root_i)^{m_i})
///
/// Numerator coefficients live in R (Scalar or SpinPoly); roots and lead are Scalars.
/// After every operation, linear factors dividing the numerator are cancelled, so
/// the numerator never vanishes at a listed root. Roots are kept sorted by
/// canonical_less and each root appears once.
template <class R>
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(Poly<R> numerator, std::vector<LinearFactor> denominator = {}, Scalar lead = Scalar(1))
      : num_(std::move(numerator)), den_(std::move(denominator)), lead_(std::move(lead)) {
    if (lead_.is_zero()) throw DivisionByZero("rational function with zero leading denominator constant");
    canonicalize();
  }

  static RatFun constant(R value) { return RatFun(Poly<R>::constant(std::move(value))); }
  static RatFun polynomial(Poly<R> p) { return RatFun(std::move(p)); }

  /// (alpha * lambda + beta)^{-k}; constant when alpha == 0.
  static RatFun linear_inverse_power(const Scalar& alpha, const Scalar& beta, int k, R unit = R(1)) {
    if (alpha.is_zero()) {
      if (beta.is_zero()) throw DivisionByZero("inverse of the zero linear form");
      return constant(unit * beta.pow(-k));
    }
    return RatFun(Poly<R>::constant(std::move(unit)), {{-beta / alpha, k}}, alpha.pow(k));
  }

  /// (gamma * lambda + delta) / (alpha * lambda + beta)
  static RatFun linear_ratio(const Scalar& gamma, const Scalar& delta, const Scalar& alpha, const Scalar& beta) {
    RatFun inv = linear_inverse_power(alpha, beta, 1);
    return inv * RatFun(Poly<R>{R(delta), R(gamma)});
  }

  const Poly<R>& numerator() const { return num_; }
  const std::vector<LinearFactor>& denominator() const { return den_; }
  const Scalar& lead() const { return lead_; }
  bool is_zero() const { return num_.is_zero(); }

  std::vector<Scalar> poles() const {
    std::vector<Scalar> out;
    for (const auto& f : den_) out.push_back(f.root);
    return out;
  }

  int multiplicity_at(const Scalar& z) const {
    for (const auto& f : den_)
      if (f.root == z) return f.multiplicity;
    return 0;
  }

  /// Expanded denominator polynomial (lead included).
  Poly<Scalar> denominator_poly() const {
    Poly<Scalar> d = Poly<Scalar>::constant(lead_);
    for (const auto& f : den_)
      for (int k = 0; k < f.multiplicity; ++k) d = d * Poly<Scalar>{-f.root, Scalar(1)};
    return d;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) { return combine(a, b, false); }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return combine(a, b, true); }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -r.num_;
    return r;
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }

  template <class S>
  friend auto operator*(const RatFun& a, const RatFun<S>& b) -> RatFun<std::decay_t<decltype(std::declval<R>() * std::declval<S>())>> {
    using C = std::decay_t<decltype(std::declval<R>() * std::declval<S>())>;
    std::vector<C> prod;
    if (!a.num_.is_zero() && !b.numerator().is_zero()) {
      prod.assign(a.num_.size() + b.numerator().size() - 1, RingTraits<C>::zero());
      for (std::size_t i = 0; i < a.num_.size(); ++i) {
        if (ring_is_zero(a.num_.coeffs()[i])) continue;
        for (std::size_t j = 0; j < b.numerator().size(); ++j)
          prod[i + j] += a.num_.coeffs()[i] * b.numerator().coeffs()[j];
      }
    }
    std::vector<LinearFactor> den = a.den_;
    for (const auto& f : b.denominator()) den.push_back(f);
    return RatFun<C>(Poly<C>(std::move(prod)), std::move(den), a.lead_ * b.lead());
  }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  /// Multiplies every numerator coefficient by an element of a ring acting on R.
  template <class S>
  auto times(const S& s) const -> RatFun<std::decay_t<decltype(std::declval<R>() * std::declval<S>())>> {
    using C = std::decay_t<decltype(std::declval<R>() * std::declval<S>())>;
    return RatFun<C>(num_.template scaled_into<S, C>(s), den_, lead_);
  }

  RatFun divided_by(const Scalar& s) const {
    if (s.is_zero()) throw DivisionByZero("rational function divided by zero");
    return RatFun(num_, den_, lead_ * s);
  }

  /// Exact value at a point; PoleError at a listed root.
  R eval(const Scalar& x) const {
    Scalar d = lead_;
    for (const auto& f : den_) {
      Scalar diff = x - f.root;
      if (diff.is_zero()) throw PoleError("rational function evaluated at its pole " + f.root.to_string());
      d *= diff.pow(f.multiplicity);
    }
    return num_.eval(x) * d.inverse();
  }

  /// Coefficient of 1/(lambda - z0) in the Laurent expansion at z0.
  R residue(const Scalar& z0) const {
    const int m = multiplicity_at(z0);
    if (m == 0) {
      if (ring_is_zero(num_.eval(z0))) return RingTraits<R>::zero();
      throw PoleError("residue requested at " + z0.to_string() + ", which is not a listed pole");
    }
    // g(z0 + t) = numerator(z0 + t) / (lead * prod_{other} (t + z0 - r)^k); take [t^{m-1}].
    const std::size_t order = static_cast<std::size_t>(m);
    std::vector<Scalar> inv_series(order, Scalar(0));
    inv_series[0] = lead_.inverse();
    for (const auto& f : den_) {
      if (f.root == z0) continue;
      const Scalar delta = z0 - f.root;
      const Scalar dinv = delta.inverse();
      // 1/(t + delta) = sum_k (-1)^k t^k / delta^{k+1}
      std::vector<Scalar> geo(order);
      Scalar p = dinv;
      for (std::size_t k = 0; k < order; ++k) {
        geo[k] = p;
        p = -(p * dinv);
      }
      for (int rep = 0; rep < f.multiplicity; ++rep) inv_series = truncated_product(inv_series, geo);
    }
    const std::vector<R> taylor = num_.taylor(z0, order);
    R acc = RingTraits<R>::zero();
    for (std::size_t k = 0; k < order; ++k) {
      const Scalar& s = inv_series[order - 1 - k];
      if (s.is_zero() || ring_is_zero(taylor[k])) continue;
      acc += taylor[k] * s;
    }
    return acc;
  }

  /// res_{lambda = infinity} f = -[lambda^{-1}] of the expansion at infinity.
  R residue_at_infinity() const {
    if (num_.is_zero()) return RingTraits<R>::zero();
    const Poly<Scalar> dp = denominator_poly();
    const int d = dp.degree();
    const int top = num_.degree();
    if (top < d - 1) return RingTraits<R>::zero();
    // 1/D = lambda^{-d} / lc * sum_k e_k lambda^{-k}, with (1 + c_{d-1} u + ... + c_0 u^d) * sum e_k u^k = 1.
    const Scalar lc = dp.leading();
    const std::size_t need = static_cast<std::size_t>(top - d + 1) + 1;
    std::vector<Scalar> e(need, Scalar(0));
    e[0] = Scalar(1);
    for (std::size_t k = 1; k < need; ++k) {
      Scalar acc(0);
      for (std::size_t i = 1; i <= k && static_cast<int>(i) <= d; ++i) {
        const Scalar ci = dp.coeff(static_cast<std::size_t>(d) - i) / lc;
        acc -= ci * e[k - i];
      }
      e[k] = acc;
    }
    R acc = RingTraits<R>::zero();
    const Scalar lcinv = lc.inverse();
    for (int i = std::max(0, d - 1); i <= top; ++i) {
      const std::size_t k = static_cast<std::size_t>(i - d + 1);
      const R& ni = num_.coeffs()[static_cast<std::size_t>(i)];
      if (ring_is_zero(ni) || e[k].is_zero()) continue;
      acc += ni * (e[k] * lcinv);
    }
    return -acc;
  }

  friend bool operator==(const RatFun& a, const RatFun& b) { return (a - b).is_zero(); }

 private:
  template <class S>
  friend class RatFun;

  static std::vector<Scalar> truncated_product(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out(a.size(), Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }

  static Poly<Scalar> linear_power(const Scalar& root, int k) {
    Poly<Scalar> p = Poly<Scalar>::constant(Scalar(1));
    for (int i = 0; i < k; ++i) p = p * Poly<Scalar>{-root, Scalar(1)};
    return p;
  }

  /// Writes a and b over the least common multiple of their denominators.
  static RatFun combine(const RatFun& a, const RatFun& b, bool subtract) {
    if (a.num_.is_zero()) return subtract ? -b : b;
    if (b.num_.is_zero()) return a;
    std::vector<LinearFactor> lcm = a.den_;
    for (const auto& f : b.den_) {
      auto it = std::find_if(lcm.begin(), lcm.end(), [&](const LinearFactor& g) { return g.root == f.root; });
      if (it == lcm.end())
        lcm.push_back(f);
      else
        it->multiplicity = std::max(it->multiplicity, f.multiplicity);
    }
    auto lift = [&](const RatFun& x, const Scalar& scale) {
      Poly<Scalar> mult = Poly<Scalar>::constant(scale);
      for (const auto& f : lcm) {
        const int have = x.multiplicity_at(f.root);
        if (f.multiplicity > have) mult = mult * linear_power(f.root, f.multiplicity - have);
      }
      return mul_scalar_poly(x.num_, mult);
    };
    // Common lead: a.lead * b.lead.
    Poly<R> na = lift(a, b.lead_);
    Poly<R> nb = lift(b, a.lead_);
    return RatFun(subtract ? na - nb : na + nb, std::move(lcm), a.lead_ * b.lead_);
  }

  static Poly<R> mul_scalar_poly(const Poly<R>& p, const Poly<Scalar>& s) {
    if (p.is_zero() || s.is_zero()) return Poly<R>();
    std::vector<R> out(p.size() + s.size() - 1, RingTraits<R>::zero());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (ring_is_zero(p.coeffs()[i])) continue;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.coeffs()[j].is_zero()) continue;
        out[i + j] += p.coeffs()[i] * s.coeffs()[j];
      }
    }
    return Poly<R>(std::move(out));
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_.clear();
      lead_ = Scalar(1);
      return;
    }
    // Merge duplicate roots.
    std::sort(den_.begin(), den_.end(), [](const LinearFactor& x, const LinearFactor& y) { return canonical_less(x.root, y.root); });
    std::vector<LinearFactor> merged;
    for (auto& f : den_) {
      if (f.multiplicity <= 0) continue;
      if (!merged.empty() && merged.back().root == f.root)
        merged.back().multiplicity += f.multiplicity;
      else
        merged.push_back(f);
    }
    // Cancel linear factors shared with the numerator.
    for (auto& f : merged) {
      while (f.multiplicity > 0) {
        R rem;
        Poly<R> q = num_.divide_linear(f.root, &rem);
        if (!ring_is_zero(rem)) break;
        num_ = std::move(q);
        --f.multiplicity;
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const LinearFactor& f) { return f.multiplicity == 0; }), merged.end());
    den_ = std::move(merged);
  }

  Poly<R> num_;
  std::vector<LinearFactor> den_;
  Scalar lead_{1};
};

}  // namespace nrefl
