#pragma once

#include "geiser/rational.hpp"

#include <vector>

namespace geiser {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

// Affine solution space of A x = b over Q: a particular solution plus a
// kernel basis in reduced echelon form, or inconsistency.
struct LinearSolution {
  bool consistent = false;
  QVector particular;        // empty if inconsistent
  std::vector<QVector> kernel;
  int rank = 0;
};

inline LinearSolution solve_linear(QMatrix rows, QVector rhs) {
  const std::size_t m = rows.size();
  if (rhs.size() != m) throw PreconditionError("rhs size does not match row count");
  std::size_t n = m == 0 ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != n) throw PreconditionError("matrix is not rectangular");

  // Gauss-Jordan to reduced row echelon form on [A | b].
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t sel = row;
    while (sel < m && rows[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[row]);
    std::swap(rhs[sel], rhs[row]);
    Rational inv = Rational(1) / rows[row][col];
    for (std::size_t j = col; j < n; ++j) rows[row][j] *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[row][j];
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  LinearSolution sol;
  sol.rank = static_cast<int>(row);
  for (std::size_t i = row; i < m; ++i)
    if (rhs[i] != 0) return sol;  // inconsistent
  sol.consistent = true;
  sol.particular.assign(n, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i)
    sol.particular[static_cast<std::size_t>(pivot_col[i])] = rhs[i];
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    QVector v(n, Rational(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][free_col];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace geiser
