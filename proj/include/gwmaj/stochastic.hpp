#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwmaj/linalg.hpp"

namespace gwmaj {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require_square(const Matrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": nonempty square matrix required");
  }
}

inline bool rows_sum_to_one(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j);
    if (sum != 1) return false;
  }
  return true;
}

inline bool columns_sum_to_one(const Matrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational sum(0);
    for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j);
    if (sum != 1) return false;
  }
  return true;
}
}  // namespace detail

/// Re = e: rows sum to 1, entries of any sign.
inline bool is_g_row_stochastic(const Matrix& m) {
  detail::require_square(m, "is_g_row_stochastic");
  return detail::rows_sum_to_one(m);
}

/// Nonnegative with rows summing to 1.
inline bool is_row_stochastic(const Matrix& m) {
  detail::require_square(m, "is_row_stochastic");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0) return false;
    }
  return detail::rows_sum_to_one(m);
}

/// De = e and Dᵗe = e: rows and columns sum to 1, entries of any sign.
inline bool is_g_doubly_stochastic(const Matrix& m) {
  detail::require_square(m, "is_g_doubly_stochastic");
  return detail::rows_sum_to_one(m) && detail::columns_sum_to_one(m);
}

inline bool is_permutation(const Matrix& m) {
  detail::require_square(m, "is_permutation");
  const std::size_t n = m.rows();
  std::vector<std::size_t> row_ones(n, 0), col_ones(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) == 1) {
        ++row_ones[i];
        ++col_ones[j];
      } else if (m(i, j) != 0) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_ones[i] != 1 || col_ones[i] != 1) return false;
  }
  return true;
}

/// Validated member of GR_n.
class GRowStochastic {
 public:
  explicit GRowStochastic(Matrix m) : matrix_(std::move(m)) {
    if (!is_g_row_stochastic(matrix_)) {
      throw std::invalid_argument("GRowStochastic: rows must sum to 1");
    }
  }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

class RowStochastic {
 public:
  explicit RowStochastic(Matrix m) : matrix_(std::move(m)) {
    if (!is_row_stochastic(matrix_)) {
      throw std::invalid_argument("RowStochastic: entries must be nonnegative with unit row sums");
    }
  }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

class GDoublyStochastic {
 public:
  explicit GDoublyStochastic(Matrix m) : matrix_(std::move(m)) {
    if (!is_g_doubly_stochastic(matrix_)) {
      throw std::invalid_argument("GDoublyStochastic: rows and columns must sum to 1");
    }
  }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix result(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) result(i, j) = draw_rational(rng);
  return result;
}

namespace detail {
constexpr std::size_t kMaxGenerationRetries = 1000;
}

inline Matrix random_invertible_matrix(std::size_t n, Rng& rng) {
  for (std::size_t attempt = 0; attempt < detail::kMaxGenerationRetries; ++attempt) {
    Matrix candidate = random_matrix(n, n, rng);
    if (rank(candidate) == n) return candidate;
  }
  throw GenerationError("random_invertible_matrix: retry cap exhausted");
}

/// Each row: n-1 free single-digit rational draws, last entry balances the
/// sum to 1.
inline GRowStochastic random_g_row_stochastic(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_g_row_stochastic: n must be >= 1");
  Matrix result(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      result(i, j) = draw_rational(rng);
      sum += result(i, j);
    }
    result(i, n - 1) = Rational(1) - sum;
  }
  return GRowStochastic(std::move(result));
}

inline GRowStochastic random_invertible_g_row_stochastic(std::size_t n, Rng& rng) {
  for (std::size_t attempt = 0; attempt < detail::kMaxGenerationRetries; ++attempt) {
    GRowStochastic candidate = random_g_row_stochastic(n, rng);
    if (rank(candidate.matrix()) == n) return candidate;
  }
  throw GenerationError("random_invertible_g_row_stochastic: retry cap exhausted");
}

/// Nonnegative single-digit draws normalized by the row sum; all-zero rows
/// are redrawn.
inline RowStochastic random_row_stochastic(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_row_stochastic: n must be >= 1");
  Matrix result(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum(0);
    std::size_t attempt = 0;
    do {
      if (attempt++ >= detail::kMaxGenerationRetries) {
        throw GenerationError("random_row_stochastic: retry cap exhausted");
      }
      sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        result(i, j) = draw_rational(rng, 0, 9);
        sum += result(i, j);
      }
    } while (sum == 0);
    for (std::size_t j = 0; j < n; ++j) result(i, j) /= sum;
  }
  return RowStochastic(std::move(result));
}

/// Double-centers a random matrix so both row and column sums become 1.
inline GDoublyStochastic random_g_doubly_stochastic(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_g_doubly_stochastic: n must be >= 1");
  Matrix q = random_matrix(n, n, rng);
  const Vec e = ones_vector(n);
  Vec row_err = mat_vec(q, e);
  Vec col_err = mat_vec(transpose(q), e);
  Rational total(0);
  for (std::size_t i = 0; i < n; ++i) {
    row_err[i] -= 1;
    col_err[i] -= 1;
    total += row_err[i];
  }
  const Rational inv_n(mpz_class(1), mpz_class(n));
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d(i, j) = q(i, j) - inv_n * row_err[i] - inv_n * col_err[j] + inv_n * inv_n * total;
    }
  return GDoublyStochastic(std::move(d));
}

/// Fisher-Yates permutation matrix.
inline Matrix random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(i - 1)));
    std::swap(image[i - 1], image[j]);
  }
  Matrix result(n, n);
  for (std::size_t i = 0; i < n; ++i) result(i, image[i]) = 1;
  return result;
}

/// Affine combination of row stochastic matrices with coefficients summing
/// to 1.
struct AffineCombination {
  std::vector<std::pair<Rational, RowStochastic>> terms;

  Rational coefficient_sum() const {
    Rational sum(0);
    for (const auto& [coeff, part] : terms) sum += coeff;
    return sum;
  }

  Matrix reconstruct() const {
    if (terms.empty()) throw std::logic_error("AffineCombination: empty");
    const std::size_t n = terms.front().second.matrix().rows();
    Matrix sum(n, n);
    for (const auto& [coeff, part] : terms) sum = sum + coeff * part.matrix();
    return sum;
  }
};

/// Writes R in GR_n as an affine combination of row stochastic matrices.
/// Already row stochastic inputs come back as a single term; otherwise the
/// combination is (1+t)·S1 - t·(J/n) with t = -n·min(R), the smallest shift
/// that makes S1 = (R + t·J/n)/(1+t) entrywise nonnegative.
inline AffineCombination affine_decompose(const GRowStochastic& g) {
  const Matrix& r = g.matrix();
  if (is_row_stochastic(r)) {
    AffineCombination combination;
    combination.terms.emplace_back(Rational(1), RowStochastic(r));
    return combination;
  }
  const std::size_t n = r.rows();
  Rational min_entry = r(0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (r(i, j) < min_entry) min_entry = r(i, j);
    }
  Rational shift(0);
  shift = Rational(mpz_class(-static_cast<long>(n))) * min_entry;  // > 0 here
  const Rational inv_n(mpz_class(1), mpz_class(n));
  const Rational per_entry = shift * inv_n;  // -min_entry
  Matrix s1(n, n);
  Rational scale(0);
  scale = Rational(1) / (Rational(1) + shift);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s1(i, j) = (r(i, j) + per_entry) * scale;
  Matrix anchor(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) anchor(i, j) = inv_n;
  AffineCombination combination;
  combination.terms.emplace_back(Rational(1) + shift, RowStochastic(std::move(s1)));
  combination.terms.emplace_back(-shift, RowStochastic(std::move(anchor)));
  return combination;
}

}  // namespace gwmaj
