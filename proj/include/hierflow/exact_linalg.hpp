#pragma once

// Dense Gauss-Jordan elimination over an exact field.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hierflow {

template <class F>
using ExactMatrix = std::vector<std::vector<F>>;

template <class F>
struct Elimination {
  ExactMatrix<F> reduced;           // reduced row echelon form of the augmented input
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  F determinant_factor = F::one();  // product of pivots and swap signs
  int swaps = 0;
};

/// Row-reduces `m` in place over its first `columns` columns.
template <class F>
Elimination<F> gauss_jordan(ExactMatrix<F> m, std::size_t columns) {
  Elimination<F> e;
  std::size_t row = 0;
  const std::size_t rows = m.size();
  for (std::size_t col = 0; col < columns && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) {
      std::swap(m[pivot], m[row]);
      ++e.swaps;
    }
    const F p = m[row][col];
    e.determinant_factor = e.determinant_factor * p;
    const F inv = p.inverse();
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const F f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        if (!m[row][c].is_zero()) m[r][c] = m[r][c] - f * m[row][c];
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

template <class F>
F determinant(const ExactMatrix<F>& a) {
  const std::size_t n = a.size();
  auto e = gauss_jordan(a, n);
  if (e.pivots.size() < n) return F::zero();
  return e.swaps % 2 == 0 ? e.determinant_factor : -e.determinant_factor;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class F>
std::optional<ExactMatrix<F>> inverse(const ExactMatrix<F>& a) {
  const std::size_t n = a.size();
  ExactMatrix<F> aug(n, std::vector<F>(2 * n, F::zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = F::one();
  }
  auto e = gauss_jordan(std::move(aug), n);
  if (e.pivots.size() < n) return std::nullopt;
  ExactMatrix<F> inv(n, std::vector<F>(n, F::zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.reduced[i][n + j];
  }
  return inv;
}

/// For a tall matrix A (rows x cols) of full column rank returns L (cols x rows)
/// with L A = I, built from the pivot rows. Throws if A is rank deficient.
template <class F>
ExactMatrix<F> left_inverse(const ExactMatrix<F>& a, std::size_t cols) {
  const std::size_t rows = a.size();
  // Reduce [A | I] so the first `cols` rows carry L in the identity block.
  ExactMatrix<F> aug(rows, std::vector<F>(cols + rows, F::zero()));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols + i] = F::one();
  }
  auto e = gauss_jordan(std::move(aug), cols);
  if (e.pivots.size() < cols) throw std::domain_error("left_inverse: basis is linearly dependent");
  ExactMatrix<F> l(cols, std::vector<F>(rows, F::zero()));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) l[i][j] = e.reduced[i][cols + j];
  }
  return l;
}

}  // namespace hierflow
