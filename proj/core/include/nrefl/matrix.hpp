#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nrefl/errors.hpp"
#include "nrefl/poly.hpp"
#include "nrefl/scalar.hpp"

namespace nrefl {

/// How a square matrix factors over tensor legs of C^n.
struct Legs {
  enum class Kind { single, pair, triple };
  Kind kind = Kind::single;
  std::size_t factor = 0;

  static Legs single(std::size_t n) { return {Kind::single, n}; }
  static Legs pair(std::size_t n) { return {Kind::pair, n}; }
  static Legs triple(std::size_t n) { return {Kind::triple, n}; }

  std::size_t dim() const {
    switch (kind) {
      case Kind::single: return factor;
      case Kind::pair: return factor * factor;
      case Kind::triple: return factor * factor * factor;
    }
    return 0;
  }
  friend bool operator==(const Legs&, const Legs&) = default;
};

/// Dense row-major square matrix with a tensor-leg annotation.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(Legs legs) : legs_(legs), dim_(legs.dim()), data_(dim_ * dim_, RingTraits<T>::zero()) {}
  explicit Matrix(std::size_t dim) : Matrix(Legs::single(dim)) {}

  static Matrix identity(Legs legs) {
    Matrix m(legs);
    for (std::size_t i = 0; i < m.dim_; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix identity(std::size_t dim) { return identity(Legs::single(dim)); }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, Legs legs) {
    Matrix m(legs);
    if (rows.size() != m.dim_) throw StructuralError("row count does not match legs");
    for (std::size_t i = 0; i < m.dim_; ++i) {
      if (rows[i].size() != m.dim_) throw StructuralError("row length does not match legs");
      for (std::size_t j = 0; j < m.dim_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    return from_rows(rows, Legs::single(rows.size()));
  }

  std::size_t dim() const { return dim_; }
  const Legs& legs() const { return legs_; }
  Matrix with_legs(Legs legs) const {
    if (legs.dim() != dim_) throw StructuralError("leg annotation does not match dimension");
    Matrix m = *this;
    m.legs_ = legs;
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ring_is_zero(x)) return false;
    return true;
  }

  /// First nonzero entry in row-major order, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (!ring_is_zero((*this)(i, j))) return std::pair{i, j};
    return std::nullopt;
  }

  T trace() const {
    T acc = RingTraits<T>::zero();
    for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
    return acc;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(legs_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  /// Entrywise; leg annotations are not compared.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  template <class S>
  Matrix scaled(const S& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x * s;
    return out;
  }

  void check_same(const Matrix& o) const {
    if (o.dim_ != dim_) throw StructuralError("matrix dimension mismatch: " + std::to_string(dim_) + " vs " + std::to_string(o.dim_));
  }

 private:
  Legs legs_{};
  std::size_t dim_ = 0;
  std::vector<T> data_;
};

/// Product over possibly different entry rings; zero left entries are skipped.
template <class A, class B>
auto operator*(const Matrix<A>& a, const Matrix<B>& b) -> Matrix<std::decay_t<decltype(std::declval<A>() * std::declval<B>())>> {
  using C = std::decay_t<decltype(std::declval<A>() * std::declval<B>())>;
  if (a.dim() != b.dim()) throw StructuralError("matrix product dimension mismatch");
  const Legs legs = a.legs().kind == Legs::Kind::single ? b.legs() : a.legs();
  Matrix<C> out(legs);
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const A& aik = a(i, k);
      if (ring_is_zero(aik)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const B& bkj = b(k, j);
        if (ring_is_zero(bkj)) continue;
        out(i, j) += aik * bkj;
      }
    }
  return out;
}

template <class A, class B>
auto commutator(const Matrix<A>& a, const Matrix<B>& b) {
  return a * b - b * a;
}

template <class A, class B>
auto kron(const Matrix<A>& a, const Matrix<B>& b) -> Matrix<std::decay_t<decltype(std::declval<A>() * std::declval<B>())>> {
  using C = std::decay_t<decltype(std::declval<A>() * std::declval<B>())>;
  const std::size_t na = a.dim(), nb = b.dim();
  Legs legs = Legs::single(na * nb);
  if (na == nb && a.legs().kind == Legs::Kind::single) legs = Legs::pair(na);
  Matrix<C> out(legs);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      if (ring_is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    }
  return out;
}

using SpectralMatrix = Matrix<Scalar>;

/// P(e_i (x) e_j) = e_j (x) e_i on C^n (x) C^n.
SpectralMatrix permutation_operator(std::size_t n);

/// Ordered pair of legs among a, b, c of a triple tensor product.
enum class Placement { ab, ac, bc, ba, ca, cb };
Placement parse_placement(const std::string& name);

/// Places a pair-leg matrix on the named legs of (C^n)^{(x)3}, identity on the third.
/// Reversed placements (ba, ...) conjugate by the swap of the two legs.
template <class T>
Matrix<T> embed_pair(const Matrix<T>& m, Placement placement, std::size_t n) {
  if (m.dim() != n * n) throw StructuralError("embed_pair expects a pair-leg matrix of factor size " + std::to_string(n));
  std::size_t first = 0, second = 1;
  switch (placement) {
    case Placement::ab: first = 0, second = 1; break;
    case Placement::ac: first = 0, second = 2; break;
    case Placement::bc: first = 1, second = 2; break;
    case Placement::ba: first = 1, second = 0; break;
    case Placement::ca: first = 2, second = 0; break;
    case Placement::cb: first = 2, second = 1; break;
  }
  const std::size_t spectator = 3 - first - second;
  Matrix<T> out(Legs::triple(n));
  const std::size_t d = n * n * n;
  for (std::size_t row = 0; row < d; ++row) {
    const std::size_t ri[3] = {row / (n * n), (row / n) % n, row % n};
    for (std::size_t col = 0; col < d; ++col) {
      const std::size_t ci[3] = {col / (n * n), (col / n) % n, col % n};
      if (ri[spectator] != ci[spectator]) continue;
      const T& v = m(ri[first] * n + ri[second], ci[first] * n + ci[second]);
      if (!ring_is_zero(v)) out(row, col) = v;
    }
  }
  return out;
}

/// M on the first leg of a pair: M (x) 1.
template <class T>
Matrix<T> embed_first(const Matrix<T>& m) {
  return kron(m, Matrix<Scalar>::identity(m.dim())).with_legs(Legs::pair(m.dim()));
}

/// M on the second leg of a pair: 1 (x) M.
template <class T>
Matrix<T> embed_second(const Matrix<T>& m) {
  return kron(Matrix<Scalar>::identity(m.dim()), m).with_legs(Legs::pair(m.dim()));
}

/// Conjugation by the leg swap, i.e. X_ab -> X_ba.
template <class T>
Matrix<T> swap_legs(const Matrix<T>& m) {
  if (m.legs().kind != Legs::Kind::pair) throw StructuralError("swap_legs expects a pair-leg matrix");
  const std::size_t n = m.legs().factor;
  Matrix<T> out(m.legs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(j * n + i, l * n + k) = m(i * n + j, k * n + l);
  return out;
}

/// Partial trace of a pair-leg matrix over its first (leg = 0) or second (leg = 1) factor.
template <class T>
Matrix<T> partial_trace(const Matrix<T>& m, int leg) {
  if (m.legs().kind != Legs::Kind::pair) throw StructuralError("partial_trace expects a pair-leg matrix");
  if (leg != 0 && leg != 1) throw StructuralError("partial_trace leg must be 0 or 1");
  const std::size_t n = m.legs().factor;
  Matrix<T> out(Legs::single(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (leg == 0)
          out(i, j) += m(k * n + i, k * n + j);
        else
          out(i, j) += m(i * n + k, j * n + k);
      }
  return out;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned p) {
  Matrix<T> out = Matrix<T>::identity(m.legs());
  for (unsigned i = 0; i < p; ++i) out = out * m;
  return out;
}

/// Exact inverse via fraction-free (Bareiss) elimination followed by normalisation.
/// `name` appears in the SingularMatrix message.
SpectralMatrix inverse(const SpectralMatrix& m, const std::string& name = "matrix");

Scalar determinant(const SpectralMatrix& m);

/// Nonzero scalar c with m == c * 1, if m is a scalar multiple of the identity.
std::optional<Scalar> scalar_multiple_of_identity(const SpectralMatrix& m);

/// Rows of rendered entries, one row per line.
template <class T>
std::string render_matrix(const Matrix<T>& m, const std::function<std::string(const T&)>& fmt) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << fmt(m(i, j));
    os << "]\n";
  }
  return os.str();
}

std::string render_matrix(const SpectralMatrix& m);

}  // namespace nrefl
