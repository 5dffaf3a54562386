#include "nrefl/rmatrix.hpp"

namespace nrefl {

std::string to_string(RKind kind) {
  switch (kind) {
    case RKind::rational: return "rational";
    case RKind::trigonometric: return "trigonometric";
    case RKind::constructed: return "constructed";
  }
  return "?";
}

RMatrixFun::RMatrixFun(std::size_t n, RKind kind, std::string name, Evaluator eval, PolePredicate pole)
    : n_(n), kind_(kind), name_(std::move(name)), eval_(std::move(eval)), pole_(std::move(pole)) {}

SpectralMatrix RMatrixFun::operator()(const Scalar& lambda, const Scalar& mu) const {
  const auto where = [&] { return " at (" + lambda.to_string() + ", " + mu.to_string() + ")"; };
  try {
    return eval_(lambda, mu).with_legs(Legs::pair(n_));
  } catch (const PoleError& e) {
    throw PoleError(name_ + " has a pole" + where() + ": " + e.what());
  } catch (const SingularMatrix& e) {
    throw PoleError(name_ + " undefined" + where() + ": " + e.what());
  } catch (const DivisionByZero& e) {
    throw PoleError(name_ + " undefined" + where() + ": " + e.what());
  }
}

RMatrixFun rational_r(std::size_t n) {
  if (n < 2) throw StructuralError("rational r-matrix needs n >= 2");
  const SpectralMatrix p = permutation_operator(n);
  return RMatrixFun(
      n, RKind::rational, "rational r(n=" + std::to_string(n) + ")",
      [p](const Scalar& l, const Scalar& m) {
        if (l == m) throw PoleError("lambda == mu");
        return p.scaled((l - m).inverse());
      },
      [](const Scalar& l, const Scalar& m) { return l == m; });
}

RMatrixFun trig_r() {
  return RMatrixFun(
      2, RKind::trigonometric, "trigonometric r",
      [](const Scalar& l, const Scalar& v) {
        if (l == v) throw PoleError("lambda == nu");
        const Scalar s = l + v;
        const Scalar z(0);
        SpectralMatrix m = SpectralMatrix::from_rows({{-s, z, z, z},
                                                      {z, s, Scalar(-4) * v, z},
                                                      {z, Scalar(-4) * l, s, z},
                                                      {z, z, z, -s}},
                                                     Legs::pair(2));
        return m.scaled((Scalar(2) * (l - v)).inverse());
      },
      [](const Scalar& l, const Scalar& v) { return l == v; });
}

namespace {

SpectralMatrix eval_named(const RMatrixFun& r, const char* label, const Scalar& x, const Scalar& y) {
  try {
    return r(x, y);
  } catch (const PoleError& e) {
    throw PoleError(std::string(label) + ": " + e.what());
  }
}

}  // namespace

SpectralMatrix cybe_residual(const RMatrixFun& r, const Scalar& lambda, const Scalar& mu, const Scalar& nu) {
  const std::size_t n = r.n();
  const SpectralMatrix r_ab = embed_pair(eval_named(r, "r_ab(lambda,mu)", lambda, mu), Placement::ab, n);
  const SpectralMatrix r_ac = embed_pair(eval_named(r, "r_ac(lambda,nu)", lambda, nu), Placement::ac, n);
  const SpectralMatrix r_bc = embed_pair(eval_named(r, "r_bc(mu,nu)", mu, nu), Placement::bc, n);
  const SpectralMatrix r_cb = embed_pair(eval_named(r, "r_cb(nu,mu)", nu, mu), Placement::cb, n);
  return commutator(r_ab, r_ac) + commutator(r_ab, r_bc) - commutator(r_ac, r_cb);
}

SpectralMatrix skew_residual(const RMatrixFun& r, const Scalar& lambda, const Scalar& mu) {
  return eval_named(r, "r(lambda,mu)", lambda, mu) + swap_legs(eval_named(r, "r(mu,lambda)", mu, lambda));
}

}  // namespace nrefl
