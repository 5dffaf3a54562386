#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrefl/matrix.hpp"
#include "nrefl/ratfun.hpp"
#include "nrefl/rmatrix.hpp"

namespace nrefl {

/// nu -> (a nu + b) / (c nu + d) with ad - bc != 0.
class MobiusMap {
 public:
  MobiusMap(Scalar a, Scalar b, Scalar c, Scalar d);
  static MobiusMap identity() { return MobiusMap(1, 0, 0, 1); }

  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  const Scalar& c() const { return c_; }
  const Scalar& d() const { return d_; }

  bool is_pole(const Scalar& nu) const { return (c_ * nu + d_).is_zero(); }
  Scalar operator()(const Scalar& nu) const;

  /// (this o other)(nu) = this(other(nu)).
  MobiusMap compose(const MobiusMap& other) const;
  /// tau^j; j = 0 gives the identity.
  MobiusMap iterate(unsigned j) const;
  /// Exact point orbit nu, tau(nu), ..., tau^j(nu) applied step by step.
  Scalar apply_iterate(unsigned j, const Scalar& nu) const;
  /// Smallest m <= max_order with tau^m proportional to the identity.
  std::optional<unsigned> order(unsigned max_order = 8) const;
  bool projectively_equal(const MobiusMap& other) const;

  /// 1 / (tau(lambda) - z) as a rational function of lambda.
  RatFun<Scalar> inverse_shift(const Scalar& z) const;

  std::string to_string() const;

 private:
  Scalar a_, b_, c_, d_;
};

/// Weights g^(0..N-1) as rational functions of the spectral parameter, g^(0) = 1.
class WeightFamily {
 public:
  explicit WeightFamily(std::vector<RatFun<Scalar>> weights);
  static WeightFamily trivial(unsigned N);
  /// g^(j) = omega^j
  static WeightFamily powers(unsigned N, const Scalar& omega);

  unsigned N() const { return static_cast<unsigned>(g_.size()); }
  const RatFun<Scalar>& symbolic(unsigned j) const { return g_.at(j); }
  Scalar operator()(unsigned j, const Scalar& nu) const;

 private:
  std::vector<RatFun<Scalar>> g_;
};

/// One solution of the N-reflection equation together with its base r-matrix.
struct KSolution {
  std::string label;
  std::size_t n = 2;
  unsigned N = 1;
  MobiusMap tau = MobiusMap::identity();
  WeightFamily weights = WeightFamily::trivial(1);
  std::function<SpectralMatrix(const Scalar&)> k;
  RMatrixFun base_r = rational_r(2);
  std::map<std::string, Scalar> params;
  bool identity_k = false;
  /// Expected f(nu) in k^(N)(nu) = f(nu) * 1, when the case claims N-unitarity.
  std::optional<std::function<Scalar(const Scalar&)>> expected_unitarity;
  /// G for the k = theta + nu G family.
  std::optional<SpectralMatrix> G;

  SpectralMatrix k_at(const Scalar& nu) const;
};

/// k^(j)(nu) = k^(j-1)(nu) k(tau^{j-1}(nu)), k^(0) = 1.
SpectralMatrix k_iter(const KSolution& ks, unsigned j, const Scalar& nu);

struct UnitaritySample {
  Scalar nu;
  std::optional<Scalar> f;       ///< empty when k^(N)(nu) is not scalar
  std::optional<Scalar> expected;
  bool ok = false;
};

UnitaritySample n_unitarity_at(const KSolution& ks, const Scalar& nu);

/// LHS - RHS of the N-reflection equation at (lambda, nu), summed term by term.
SpectralMatrix nre_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu);

/// rbar_ab(lambda, nu) = sum_j g^(j)(nu) k_b^(j)(nu) r_ab(lambda, tau^j nu) k_b^(j)(nu)^{-1}
RMatrixFun build_rbar(const RMatrixFun& r, const KSolution& ks);

/// rbar_ab(lambda, nu) k_a(lambda) - k_a(lambda) rbar_ab(tau(lambda), nu)
SpectralMatrix compact_form_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu);

/// r_ab(lambda,nu) - omega k_a(lambda) k_b(nu) r_ab(tau lambda, tau nu) k_b(nu)^{-1} k_a(lambda)^{-1}
SpectralMatrix symmetry_relation_residual(const KSolution& ks, const Scalar& omega, const Scalar& lambda, const Scalar& nu);

/// For identity k: sum_j g^(j)(nu) / (lambda - tau^j nu) - sum_j g^(j)(nu) / (tau(lambda) - tau^j nu).
Scalar scalar_functional_residual(const KSolution& ks, const Scalar& lambda, const Scalar& nu);

/// Reparametrisation relating rbar to the rational r-matrix:
/// rbar(lambda, mu) == prefactor(mu) * P / (p(lambda) - p(mu)).
struct EquivalenceTransform {
  std::function<Scalar(const Scalar&)> reparam;
  std::function<Scalar(const Scalar&)> prefactor;
};

/// Transform for the identity-k 2- and 3-reflection cases. ConstraintError when c == 0.
EquivalenceTransform equivalence_transform(const KSolution& ks);

struct EquivalenceSample {
  SpectralMatrix rbar;
  SpectralMatrix transformed;
  bool equal = false;
};

EquivalenceSample equivalence_check(const KSolution& ks, const Scalar& lambda, const Scalar& mu);

// ---- catalog ---------------------------------------------------------------

/// k(nu) = theta 1 + nu G with G^N = 1; tau(nu) = omega nu, g^(j) = omega^j, omega = zeta_N.
KSolution rational_g_case(unsigned N, const Scalar& theta, const SpectralMatrix& G, const std::string& label = "rational-g");
/// diag(1, omega, ..., omega^{n-1}) with omega = zeta_N.
SpectralMatrix diagonal_roots_G(unsigned N, std::size_t n);
/// n x n cyclic shift (G^n = 1).
SpectralMatrix cyclic_shift_G(std::size_t n);

/// Identity k, tau(nu) = (a nu + b)/(c nu - a), g^(1) = -(a^2 + bc)/(a - c nu)^2.
KSolution identity_two_reflection(const Scalar& a, const Scalar& b, const Scalar& c);
/// Identity k, tau(nu) = (a nu + b)/(c nu + d) with a^2 + ad + bc + d^2 = 0.
KSolution identity_three_reflection(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

enum class TrigTwoK { identity, tau_nu };
KSolution trig_two_reflection(TrigTwoK which, const Scalar& a, const Scalar& b, const Scalar& c);

enum class TrigThreeK { identity, tau_nu, tau2_nu, tau_tau2, poly_a, poly_b };
KSolution trig_three_reflection(TrigThreeK which, const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

/// N = 1, tau = id, g = (1), k = 1.
KSolution trivial_case(const RMatrixFun& r);

/// Case with g^(1) replaced by the constant +1 (for negative controls).
KSolution with_tampered_weight(const KSolution& ks, unsigned j, const RatFun<Scalar>& replacement);

struct CatalogEntry {
  std::string label;
  std::string description;
  std::function<KSolution()> build;  ///< builds with the default parameters
};

/// Every cataloged family with its default parameters.
std::vector<CatalogEntry> catalog();

/// Label plus parameter assignments; unspecified parameters take catalog defaults.
struct CaseDescriptor {
  std::string label;
  std::optional<unsigned> N;
  std::optional<std::size_t> n;
  std::map<std::string, Scalar> params;
  std::optional<SpectralMatrix> G;
  /// "diag-roots" or "cyclic" when G is not given explicitly.
  std::optional<std::string> G_kind;
  /// Base r for the trivial case: "rational" or "trig".
  std::optional<std::string> r;
};

/// ConstraintError for violated parameter relations, ParseError for unknown labels.
KSolution build_case(const CaseDescriptor& desc);

/// The cyclotomic order needed to parse "z" in this case's parameters, if any.
std::optional<int> case_cyclotomic_order(const CaseDescriptor& desc);

/// Parses {label, N, n, params {...}, G: [[...]], G_kind, r} from JSON text.
CaseDescriptor parse_case_descriptor(const std::string& json_text);

}  // namespace nrefl
