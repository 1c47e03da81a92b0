#pragma once

// Brute-force feasibility oracle for { r >= 0 : r * M = c }, independent of
// the simplex path in gwmaj/lp.hpp. If a nonnegative solution exists, one
// exists whose support has linearly independent constraint rows, so
// enumerating all row subsets of M (columns of the standard-form system) and
// solving each square-free subsystem with a local elimination is complete
// for the small sizes used in tests.

#include <cstddef>
#include <optional>
#include <vector>

#include "gwmaj/lp.hpp"
#include "gwmaj/matrix.hpp"

namespace gwmaj_test {

// Local elimination on an augmented system; deliberately shares no code with
// gwmaj::rref. Returns the unique solution of A x = b when the selected
// columns are independent and the system is consistent.
inline std::optional<gwmaj::Vec> solve_exact_unique(std::vector<gwmaj::Vec> rows,
                                                    gwmaj::Vec rhs) {
  const std::size_t height = rows.size();
  const std::size_t width = height == 0 ? 0 : rows.front().size();
  std::vector<std::size_t> pivot_of_col(width, static_cast<std::size_t>(-1));
  std::size_t next_row = 0;
  for (std::size_t col = 0; col < width && next_row < height; ++col) {
    std::size_t pick = next_row;
    while (pick < height && rows[pick][col] == 0) ++pick;
    if (pick == height) return std::nullopt;  // dependent columns
    std::swap(rows[pick], rows[next_row]);
    std::swap(rhs[pick], rhs[next_row]);
    gwmaj::Rational pivot(0);
    pivot = rows[next_row][col];
    for (std::size_t c = 0; c < width; ++c) rows[next_row][c] /= pivot;
    rhs[next_row] /= pivot;
    for (std::size_t r = 0; r < height; ++r) {
      if (r == next_row || rows[r][col] == 0) continue;
      gwmaj::Rational factor(0);
      factor = rows[r][col];
      for (std::size_t c = 0; c < width; ++c) rows[r][c] -= factor * rows[next_row][c];
      rhs[r] -= factor * rhs[next_row];
    }
    pivot_of_col[col] = next_row;
    ++next_row;
  }
  if (next_row < width) return std::nullopt;
  for (std::size_t r = next_row; r < height; ++r) {
    if (rhs[r] != 0) return std::nullopt;  // inconsistent
  }
  gwmaj::Vec solution(width, gwmaj::Rational(0));
  for (std::size_t col = 0; col < width; ++col) solution[col] = rhs[pivot_of_col[col]];
  return solution;
}

inline bool feasible_by_enumeration(const gwmaj::FeasibilityProblem& problem) {
  const std::size_t p = problem.constraints.rows();
  const std::size_t q = problem.constraints.cols();
  for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < p; ++j) {
      if (mask & (std::size_t{1} << j)) support.push_back(j);
    }
    if (support.size() > q && q > 0) continue;
    // Standard-form columns for the selected support: rows of M transposed.
    std::vector<gwmaj::Vec> rows(q, gwmaj::Vec(support.size(), gwmaj::Rational(0)));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t s = 0; s < support.size(); ++s)
        rows[i][s] = problem.constraints(support[s], i);
    gwmaj::Vec rhs = problem.target;
    const std::optional<gwmaj::Vec> solution = solve_exact_unique(std::move(rows), std::move(rhs));
    if (!solution) continue;
    bool nonnegative = true;
    for (const gwmaj::Rational& value : *solution) {
      if (value < 0) nonnegative = false;
    }
    if (!nonnegative) continue;
    gwmaj::Vec full(p, gwmaj::Rational(0));
    for (std::size_t s = 0; s < support.size(); ++s) full[support[s]] = (*solution)[s];
    if (gwmaj::verify_feasible_point(problem, full)) return true;
  }
  return false;
}

}  // namespace gwmaj_test
