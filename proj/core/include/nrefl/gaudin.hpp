#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrefl/matrix.hpp"
#include "nrefl/ratfun.hpp"
#include "nrefl/reflection.hpp"
#include "nrefl/spin.hpp"

namespace nrefl {

using SpinMatrix = Matrix<SpinPoly>;

/// Which closed-form Hamiltonian family a model belongs to. `generic` has no closed form.
enum class GaudinMode { generic, two_reflection, three_reflection, bcl, z3 };

std::string to_string(GaudinMode mode);
GaudinMode parse_gaudin_mode(const std::string& name);

/// Model description as read from JSON.
struct GaudinConfig {
  GaudinMode mode = GaudinMode::two_reflection;
  std::map<std::string, Scalar> params;
  std::vector<Scalar> z;
  std::vector<Scalar> casimirs;
  /// Optional initial spins (s^+, s^-, s^z) per site, used by simulations.
  std::optional<std::vector<std::array<std::complex<double>, 3>>> initial;
};

/// {case, params {a,b,c,d}, L, z: [...], casimirs: [...], initial: [[sp, sm, sz], ...]}
GaudinConfig parse_gaudin_config(const std::string& json_text);

/// Gaudin-type model on L su(2) sites built from an identity-k solution of the
/// N-reflection equation for the rational r-matrix on C^2.
class GaudinModel {
 public:
  /// Validates distinct sites, tau-orbits off the sites and off every pole.
  GaudinModel(KSolution ks, std::vector<Scalar> z, GaudinMode mode = GaudinMode::generic, std::vector<Scalar> casimir_values = {});

  static GaudinModel from_config(const GaudinConfig& cfg);
  static GaudinModel two_reflection(const Scalar& a, const Scalar& b, const Scalar& c, std::vector<Scalar> z);
  static GaudinModel three_reflection(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d, std::vector<Scalar> z);
  /// Two-reflection with b = c = 0, so tau(lambda) = -lambda and g^(1) = -1.
  static GaudinModel bcl(std::vector<Scalar> z, const Scalar& a = Scalar(1));
  /// Three-reflection with a = zeta_3, d = 1, b = c = 0.
  static GaudinModel z3(std::vector<Scalar> z);

  int L() const { return static_cast<int>(z_.size()); }
  const std::vector<Scalar>& sites() const { return z_; }
  const KSolution& solution() const { return ks_; }
  GaudinMode mode() const { return mode_; }
  const std::vector<Scalar>& casimir_values() const { return casimir_values_; }

  /// (1/nu) [[s^z/2, s^+], [s^-, -s^z/2]] at site m; nu is the shifted argument.
  SpinMatrix local_lax(int m, const Scalar& nu) const;

  /// sum_j g^(j)(lambda) / (tau^j(lambda) - z_m), the scalar weight of site m in B.
  Scalar site_weight(int m, const Scalar& lambda) const;
  RatFun<Scalar> site_weight_symbolic(int m) const;

  SpinMatrix big_B(const Scalar& lambda) const;
  Matrix<RatFun<SpinPoly>> big_B_symbolic() const;
  RatFun<SpinPoly> trace_B_squared() const;

  /// 1/2 res_{lambda = z_m} tr B(lambda)^2
  SpinPoly hamiltonian_residue(int m) const;
  /// The closed-form H_i of the model's family. ConstraintError for `generic`.
  SpinPoly hamiltonian_explicit(int i) const;
  SpinPoly casimir(int j) const { return nrefl::casimir(j, L()); }

  /// rbar for this model's solution.
  const RMatrixFun& rbar() const { return rbar_; }

 private:
  const Scalar& param(const std::string& name) const;

  KSolution ks_;
  std::vector<Scalar> z_;
  GaudinMode mode_;
  std::vector<Scalar> casimir_values_;
  RMatrixFun rbar_;
};

/// Entry ((i,k),(j,l)) = {A_ij, B_kl}: the bracket {A_a, B_b} on the tensor square.
SpinMatrix tensor_bracket(const SpinMatrix& a, const SpinMatrix& b);

/// Entrywise {f, B_ij}.
SpinMatrix bracket_with(const SpinPoly& f, const SpinMatrix& b);

/// {l_a(m, lambda), l_b(m, mu)} - [P/(lambda - mu), l_a(m, lambda) + l_b(m, mu)]
SpinMatrix local_poisson_residual(const GaudinModel& model, int m, const Scalar& lambda, const Scalar& mu);

SpinPoly trace_power(const SpinMatrix& b, unsigned p);

SpinPoly involution_residual(const GaudinModel& model, int i, int k);
SpinPoly trB_bracket_residual(const GaudinModel& model, unsigned p, unsigned q, const Scalar& lambda, const Scalar& nu);

/// {B_a(l), B_b(m)} - [rbar_ab(l,m), B_a(l)] + [rbar_ba(m,l), B_b(m)]
SpinMatrix rbb_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& mu);

/// M_b(lambda, nu) = p tr_a(B_a(lambda)^{p-1} rbar_ba(nu, lambda))
SpinMatrix m_matrix(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p);
/// {tr B(lambda)^p, B(nu)} - [B(nu), M(lambda, nu)]
SpinMatrix lax_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p);
/// M(lambda, nu) k(nu) - k(nu) M(lambda, tau(nu))
SpinMatrix mk_residual(const GaudinModel& model, const Scalar& lambda, const Scalar& nu, unsigned p);

/// H = sum_k c_k S_ik with S_ii the Casimir; empty when H has any other shape.
std::optional<std::vector<Scalar>> pair_decomposition(const SpinPoly& h, int i, int sites);

}  // namespace nrefl
