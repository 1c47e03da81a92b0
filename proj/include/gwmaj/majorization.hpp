#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "gwmaj/lp.hpp"
#include "gwmaj/stochastic.hpp"

namespace gwmaj {

enum class Relation { Matrix, Gw, Gs };

inline const char* relation_name(Relation relation) {
  switch (relation) {
    case Relation::Matrix: return "matrix";
    case Relation::Gw: return "gw";
    case Relation::Gs: return "gs";
  }
  return "?";
}

inline std::optional<Relation> relation_from_name(std::string_view name) {
  if (name == "matrix") return Relation::Matrix;
  if (name == "gw") return Relation::Gw;
  if (name == "gs") return Relation::Gs;
  return std::nullopt;
}

class NoWitnessError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Decision outcome for A ≻ B. When the relation holds the witness W
/// satisfies W·A = B and lies in the relation's stochastic class. When the
/// matrix relation fails, the first unsolvable row carries a Farkas
/// certificate; a failed gw/gs decision records the structure-level reason
/// (failed row for gw, nothing for the jointly-constrained gs system).
struct MajorizationVerdict {
  bool holds = false;
  std::optional<Matrix> witness;
  std::optional<std::size_t> failed_row;
  std::optional<FarkasCertificate> certificate;
};

namespace detail {
inline void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() == 0 || a.cols() == 0 || !a.same_shape(b)) {
    throw std::invalid_argument(std::string(who) + ": A and B must be nonempty and of equal shape");
  }
}
}  // namespace detail

/// A ≻_gw B: B = RA for some R with Re = e. Rows of R are independent, so
/// each is one linear system r·[A | e] = [bᵢ | 1].
inline MajorizationVerdict gw_majorizes(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "gw_majorizes");
  const std::size_t n = a.rows();
  const Matrix constraints = append_column(a, ones_vector(n));
  Matrix witness(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec target = b.row(i);
    target.push_back(Rational(1));
    const AffineSolutionSet solution = solve_left(constraints, target);
    if (!solution.feasible()) {
      MajorizationVerdict verdict;
      verdict.failed_row = i;
      return verdict;
    }
    witness.set_row(i, *solution.particular);
  }
  MajorizationVerdict verdict;
  verdict.holds = true;
  verdict.witness = std::move(witness);
  return verdict;
}

/// A ≻ B: B = RA for some row stochastic R. One LP feasibility call per row;
/// the first infeasible row is reported with its certificate.
inline MajorizationVerdict matrix_majorizes(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "matrix_majorizes");
  const std::size_t n = a.rows();
  const Matrix constraints = append_column(a, ones_vector(n));
  Matrix witness(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec target = b.row(i);
    target.push_back(Rational(1));
    FeasibilityOutcome outcome = solve_feasibility({constraints, std::move(target)});
    if (!is_feasible(outcome)) {
      MajorizationVerdict verdict;
      verdict.failed_row = i;
      verdict.certificate = std::get<FarkasCertificate>(std::move(outcome));
      return verdict;
    }
    witness.set_row(i, feasible_point(outcome));
  }
  MajorizationVerdict verdict;
  verdict.holds = true;
  verdict.witness = std::move(witness);
  return verdict;
}

/// A ≻_gs B: B = DA for some D with De = e and Dᵗe = e. Column sums couple
/// the rows of D, so this is a single joint system in the n² entries of D.
inline MajorizationVerdict gs_majorizes(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b, "gs_majorizes");
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  // Unknown row vector d, d[i*n + k] = D(i,k); constraints as columns.
  Matrix system(n * n, n * m + 2 * n);
  Vec target(n * m + 2 * n, Rational(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) system(i * n + k, col) = a(k, j);
      target[col] = b(i, j);
      ++col;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) system(i * n + k, col) = 1;
    target[col] = 1;
    ++col;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) system(i * n + k, col) = 1;
    target[col] = 1;
    ++col;
  }
  const AffineSolutionSet solution = solve_left(system, target);
  if (!solution.feasible()) return MajorizationVerdict{};
  Matrix witness(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) witness(i, k) = (*solution.particular)[i * n + k];
  MajorizationVerdict verdict;
  verdict.holds = true;
  verdict.witness = std::move(witness);
  return verdict;
}

inline MajorizationVerdict majorizes(Relation relation, const Matrix& a, const Matrix& b) {
  switch (relation) {
    case Relation::Matrix: return matrix_majorizes(a, b);
    case Relation::Gw: return gw_majorizes(a, b);
    case Relation::Gs: return gs_majorizes(a, b);
  }
  throw std::logic_error("majorizes: unknown relation");
}

inline bool in_span_of_ones(const Vec& x) {
  for (const Rational& entry : x) {
    if (entry != x.front()) return false;
  }
  return true;
}

/// x ≻_gw y for every y iff x has two distinct components.
inline bool gw_dominates_all(const Vec& x) {
  if (x.empty()) throw std::invalid_argument("gw_dominates_all: empty vector");
  return !in_span_of_ones(x);
}

/// Explicit R in GR_n with Rx = y. Row i is supported on the first index
/// pair (k, l) with x_k ≠ x_l:
///   r_ik = (y_i - x_l)/(x_k - x_l),  r_il = (x_k - y_i)/(x_k - x_l).
/// When x lies in span{e} every R fixes it, so y = x is the only target and
/// the witness is I.
inline Matrix vector_gw_witness(const Vec& x, const Vec& y) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("vector_gw_witness: vectors must be nonempty and of equal length");
  }
  const std::size_t n = x.size();
  if (in_span_of_ones(x)) {
    if (x == y) return Matrix::identity(n);
    throw NoWitnessError("vector_gw_witness: x lies in span{e}, which every g-row stochastic matrix fixes");
  }
  std::size_t k = 0, l = 0;
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[i] != x[j]) {
        k = i;
        l = j;
        found = true;
        break;
      }
    }
  }
  Matrix witness(n, n);
  Rational denom(0);
  denom = x[k] - x[l];
  for (std::size_t i = 0; i < n; ++i) {
    witness(i, k) = (y[i] - x[l]) / denom;
    witness(i, l) = (x[k] - y[i]) / denom;
  }
  return witness;
}

/// Witness re-check that shares no code with the deciders: one matrix
/// product plus the class predicate.
inline bool verify_majorization_witness(Relation relation, const Matrix& a, const Matrix& b,
                                        const Matrix& witness) {
  if (witness.rows() != a.rows() || witness.cols() != a.rows()) return false;
  bool in_class = false;
  switch (relation) {
    case Relation::Matrix: in_class = is_row_stochastic(witness); break;
    case Relation::Gw: in_class = is_g_row_stochastic(witness); break;
    case Relation::Gs: in_class = is_g_doubly_stochastic(witness); break;
  }
  return in_class && witness * a == b;
}

/// Certificate re-check for a failed matrix-majorization row: rebuilds the
/// row system { r·[A | e] = [b_row | 1], r >= 0 } and checks the two Farkas
/// inequalities by multiplication alone.
inline bool verify_row_certificate(const Matrix& a, const Matrix& b, std::size_t row,
                                   const FarkasCertificate& certificate) {
  if (row >= a.rows() || !a.same_shape(b)) return false;
  Vec target = b.row(row);
  target.push_back(Rational(1));
  return verify_certificate({append_column(a, ones_vector(a.rows())), std::move(target)},
                            certificate);
}

}  // namespace gwmaj
