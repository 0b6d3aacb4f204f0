#ifndef FLAGSYM_LINALG_HPP
#define FLAGSYM_LINALG_HPP

#include <vector>

#include "flagsym/rational.hpp"

namespace flagsym {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

/// In-place row echelon form, first-nonzero-column pivoting in the fixed
/// coordinate order.  Returns the rank.
inline int row_echelon(QMat& m) {
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  int rank = 0;
  for (size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
    size_t piv = m.size();
    for (size_t i = rank; i < m.size(); ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    Rational p = m[rank][col];
    for (size_t j = col; j < cols; ++j) m[rank][j] /= p;
    for (size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) == rank || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline int rank_of(QMat m) { return row_echelon(m); }

/// Does span(rows of sub) lie inside span(rows of big)?
inline bool span_included(const QMat& sub, const QMat& big) {
  QMat stacked = big;
  int rb = rank_of(big);
  for (const auto& row : sub) stacked.push_back(row);
  return rank_of(std::move(stacked)) == rb;
}

/// Basis of the left null space: all c with c^T m = 0.
inline QMat left_nullspace(const QMat& m) {
  size_t rows = m.size();
  if (rows == 0) return {};
  size_t cols = m[0].size();
  // augment each row with an identity tail, eliminate, read off zero rows
  QMat aug(rows, QVec(cols + rows, Rational(0)));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
    aug[i][cols + i] = 1;
  }
  // echelon only over the first `cols` columns
  int rank = 0;
  for (size_t col = 0; col < cols && rank < static_cast<int>(rows); ++col) {
    size_t piv = rows;
    for (size_t i = rank; i < rows; ++i)
      if (aug[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(aug[rank], aug[piv]);
    Rational p = aug[rank][col];
    for (size_t j = 0; j < cols + rows; ++j) aug[rank][j] /= p;
    for (size_t i = 0; i < rows; ++i) {
      if (static_cast<int>(i) == rank || aug[i][col] == 0) continue;
      Rational f = aug[i][col];
      for (size_t j = 0; j < cols + rows; ++j) aug[i][j] -= f * aug[rank][j];
    }
    ++rank;
  }
  QMat basis;
  for (size_t i = rank; i < rows; ++i)
    basis.emplace_back(aug[i].begin() + cols, aug[i].end());
  return basis;
}

/// Basis of the intersection of two row spans.
inline QMat span_intersection(const QMat& a, const QMat& b) {
  if (a.empty() || b.empty()) return {};
  QMat stacked = a;
  for (const auto& row : b) stacked.push_back(row);
  QMat kernel = left_nullspace(stacked);
  QMat inter;
  size_t cols = a[0].size();
  for (const auto& c : kernel) {
    QVec v(cols, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < cols; ++j) v[j] += c[i] * a[i][j];
    bool nonzero = false;
    for (const auto& x : v)
      if (x != 0) nonzero = true;
    if (nonzero) inter.push_back(std::move(v));
  }
  row_echelon(inter);
  while (!inter.empty()) {
    bool zero = true;
    for (const auto& x : inter.back())
      if (x != 0) zero = false;
    if (!zero) break;
    inter.pop_back();
  }
  return inter;
}

}  // namespace flagsym

#endif
