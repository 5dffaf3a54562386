#pragma once

#include <functional>
#include <string>

#include "nrefl/matrix.hpp"

namespace nrefl {

enum class RKind { rational, trigonometric, constructed };

std::string to_string(RKind kind);

/// Spectral r-matrix r(lambda, mu) on C^n (x) C^n, given as an exact evaluator.
class RMatrixFun {
 public:
  using Evaluator = std::function<SpectralMatrix(const Scalar&, const Scalar&)>;
  using PolePredicate = std::function<bool(const Scalar&, const Scalar&)>;

  RMatrixFun(std::size_t n, RKind kind, std::string name, Evaluator eval, PolePredicate pole);

  std::size_t n() const { return n_; }
  RKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  bool is_pole(const Scalar& lambda, const Scalar& mu) const { return pole_(lambda, mu); }

  /// PoleError at a pole. Evaluators are expected to detect their own poles;
  /// singular intermediate matrices are reported as poles too.
  SpectralMatrix operator()(const Scalar& lambda, const Scalar& mu) const;

 private:
  std::size_t n_;
  RKind kind_;
  std::string name_;
  Evaluator eval_;
  PolePredicate pole_;
};

/// P / (lambda - mu)
RMatrixFun rational_r(std::size_t n);

/// The 4x4 trigonometric solution with prefactor 1/(2(lambda - nu)).
RMatrixFun trig_r();

/// [r_ab(l,m), r_ac(l,n)] + [r_ab(l,m), r_bc(m,n)] - [r_ac(l,n), r_cb(n,m)] on three legs.
SpectralMatrix cybe_residual(const RMatrixFun& r, const Scalar& lambda, const Scalar& mu, const Scalar& nu);

/// r_ab(lambda, mu) + P r(mu, lambda) P; zero for skew-symmetric r.
SpectralMatrix skew_residual(const RMatrixFun& r, const Scalar& lambda, const Scalar& mu);

}  // namespace nrefl
