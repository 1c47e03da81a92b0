#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwmaj/matrix.hpp"

namespace gwmaj {

class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form by Gauss-Jordan elimination. Pivot selection is
/// the first nonzero entry in each column, so the result is deterministic.
inline RrefResult rref(Matrix work) {
  const std::size_t rows = work.rows();
  const std::size_t cols = work.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot_row = row;
    while (pivot_row < rows && work(pivot_row, col) == 0) ++pivot_row;
    if (pivot_row == rows) continue;
    work.swap_rows(row, pivot_row);
    Rational inv_pivot(0);
    inv_pivot = Rational(1) / work(row, col);
    for (std::size_t c = col; c < cols; ++c) work(row, c) *= inv_pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || work(r, col) == 0) continue;
      Rational factor(0);
      factor = work(r, col);
      for (std::size_t c = col; c < cols; ++c) work(r, c) -= factor * work(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult{std::move(work), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline std::optional<Matrix> try_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: square matrix required");
  const std::size_t n = m.rows();
  RrefResult rr = rref(hstack(m, Matrix::identity(n)));
  std::size_t leading = 0;
  for (std::size_t col : rr.pivot_columns) {
    if (col < n) ++leading;
  }
  if (leading < n) return std::nullopt;
  Matrix result(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) result(i, j) = rr.reduced(i, n + j);
  return result;
}

inline Matrix inverse(const Matrix& m) {
  std::optional<Matrix> result = try_inverse(m);
  if (!result) throw SingularError("inverse: matrix is singular");
  return *std::move(result);
}

/// Basis of { x : Mx = 0 }. One vector per free column, in ascending column
/// order, with the free variable set to 1.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
  const std::size_t cols = m.cols();
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t col : rr.pivot_columns) is_pivot[col] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t t = 0; t < rr.pivot_columns.size(); ++t) {
      v[rr.pivot_columns[t]] = -rr.reduced(t, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// True iff v is a linear combination of the columns of M.
inline bool image_contains(const Matrix& m, const Vec& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("image_contains: length mismatch");
  return rank(append_column(m, v)) == rank(m);
}

/// Full solution set of a linear system: a particular solution (absent when
/// the system is infeasible) plus a kernel basis of the homogeneous part.
struct AffineSolutionSet {
  std::optional<Vec> particular;
  std::vector<Vec> kernel;

  bool feasible() const { return particular.has_value(); }
};

/// Solves r·M = c for the row vector r (M is k×p, c has length p). The
/// particular solution sets all free variables to zero, so it is the same on
/// every run and platform.
inline AffineSolutionSet solve_left(const Matrix& m, const Vec& c) {
  if (c.size() != m.cols()) throw std::invalid_argument("solve_left: target length mismatch");
  const std::size_t unknowns = m.rows();
  const Matrix system = transpose(m);
  RrefResult rr = rref(append_column(system, c));
  AffineSolutionSet result;
  result.kernel = kernel_basis(system);
  bool feasible = true;
  for (std::size_t col : rr.pivot_columns) {
    if (col == unknowns) feasible = false;
  }
  if (feasible) {
    Vec particular(unknowns, Rational(0));
    for (std::size_t t = 0; t < rr.pivot_columns.size(); ++t) {
      particular[rr.pivot_columns[t]] = rr.reduced(t, unknowns);
    }
    result.particular = std::move(particular);
  }
  return result;
}

}  // namespace gwmaj
