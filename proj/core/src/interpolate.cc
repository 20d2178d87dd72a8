#include "polysize/interpolate.h"

#include "polysize/errors.h"

namespace polysize {

Polynomial derive_polynomial(int d, const std::vector<std::string>& vars,
                             const std::vector<Node>& nodes,
                             const std::vector<Rational>& values) {
  std::vector<Monomial> basis = monomials_up_to(vars, static_cast<unsigned>(d));
  const std::size_t n = basis.size();
  if (nodes.size() != n || values.size() != n)
    throw InferenceError("SingularSystem",
                         "expected " + std::to_string(n) + " measurements, got " +
                             std::to_string(nodes.size()));
  // Augmented matrix [A | b] with A[i][j] = basis[j](nodes[i]).
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational x = 1;
      for (const auto& [v, e] : basis[j].powers()) {
        std::size_t idx = 0;
        while (vars[idx] != v) ++idx;
        for (unsigned p = 0; p < e; ++p) x *= Rational(static_cast<long>(nodes[i][idx]));
      }
      a[i][j] = x;
    }
    a[i][n] = values[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n)
      throw InferenceError("SingularSystem",
                           "interpolation nodes are not unisolvent");
    std::swap(a[pivot], a[col]);
    Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j <= n; ++j) a[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  Polynomial out;
  for (std::size_t j = 0; j < n; ++j)
    out += Polynomial::term(a[j][n], basis[j]);
  return out;
}

}  // namespace polysize
