#include "nrefl/matrix.hpp"

namespace nrefl {

SpectralMatrix permutation_operator(std::size_t n) {
  if (n == 0) throw StructuralError("permutation operator needs n >= 1");
  SpectralMatrix p(Legs::pair(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(j * n + i, i * n + j) = Scalar(1);
  return p;
}

Placement parse_placement(const std::string& name) {
  if (name == "ab") return Placement::ab;
  if (name == "ac") return Placement::ac;
  if (name == "bc") return Placement::bc;
  if (name == "ba") return Placement::ba;
  if (name == "ca") return Placement::ca;
  if (name == "cb") return Placement::cb;
  throw ParseError("unknown leg placement '" + name + "'");
}

namespace {

/// Bareiss forward elimination on `rows` (dim x width). Returns false when singular.
/// On success the leading dim x dim block is upper triangular with nonzero diagonal.
bool bareiss_forward(std::vector<std::vector<Scalar>>& rows, std::size_t dim, int* swaps = nullptr) {
  const std::size_t width = rows.empty() ? 0 : rows[0].size();
  Scalar prev(1);
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t piv = k;
    while (piv < dim && rows[piv][k].is_zero()) ++piv;
    if (piv == dim) return false;
    if (piv != k) {
      std::swap(rows[piv], rows[k]);
      if (swaps) ++*swaps;
    }
    for (std::size_t i = k + 1; i < dim; ++i) {
      for (std::size_t j = k + 1; j < width; ++j) {
        rows[i][j] = (rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]) / prev;
      }
      rows[i][k] = Scalar(0);
    }
    prev = rows[k][k];
  }
  return true;
}

}  // namespace

SpectralMatrix inverse(const SpectralMatrix& m, const std::string& name) {
  const std::size_t n = m.dim();
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
    rows[i][n + i] = Scalar(1);
  }
  if (!bareiss_forward(rows, n)) throw SingularMatrix(name + " is singular");
  // Normalise: back substitution over the field.
  SpectralMatrix out(m.legs());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = n; i-- > 0;) {
      Scalar acc = rows[i][n + c];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rows[i][j].is_zero()) continue;
        acc -= rows[i][j] * out(j, c);
      }
      out(i, c) = acc / rows[i][i];
    }
  }
  return out;
}

Scalar determinant(const SpectralMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return Scalar(1);
  std::vector<std::vector<Scalar>> rows(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m(i, j);
  int swaps = 0;
  if (!bareiss_forward(rows, n, &swaps)) return Scalar(0);
  // The last Bareiss pivot is the determinant up to row-swap sign.
  return swaps % 2 ? -rows[n - 1][n - 1] : rows[n - 1][n - 1];
}

std::optional<Scalar> scalar_multiple_of_identity(const SpectralMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return std::nullopt;
  const Scalar c = m(0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j ? m(i, j) != c : !m(i, j).is_zero()) return std::nullopt;
    }
  return c;
}

std::string render_matrix(const SpectralMatrix& m) {
  return render_matrix<Scalar>(m, [](const Scalar& s) { return s.to_string(); });
}

}  // namespace nrefl
