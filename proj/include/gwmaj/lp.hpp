#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "gwmaj/matrix.hpp"

namespace gwmaj {

/// { r : r·constraints = target, r >= 0 }. Each column of `constraints` is
/// one equality constraint on the row vector r.
struct FeasibilityProblem {
  Matrix constraints;  // p x q
  Vec target;          // length q
};

/// Proof that a FeasibilityProblem has no solution:
/// constraints·y >= 0 componentwise while target·y < 0. Checkable with one
/// matrix-vector product, independently of any solver.
struct FarkasCertificate {
  Vec y;
};

using FeasibilityOutcome = std::variant<Vec, FarkasCertificate>;

inline bool is_feasible(const FeasibilityOutcome& outcome) {
  return std::holds_alternative<Vec>(outcome);
}

inline const Vec& feasible_point(const FeasibilityOutcome& outcome) {
  return std::get<Vec>(outcome);
}

inline const FarkasCertificate& infeasibility_certificate(const FeasibilityOutcome& outcome) {
  return std::get<FarkasCertificate>(outcome);
}

inline bool verify_feasible_point(const FeasibilityProblem& problem, const Vec& point) {
  if (point.size() != problem.constraints.rows()) return false;
  for (const Rational& entry : point) {
    if (entry < 0) return false;
  }
  return vec_mat(point, problem.constraints) == problem.target;
}

inline bool verify_certificate(const FeasibilityProblem& problem,
                               const FarkasCertificate& certificate) {
  if (certificate.y.size() != problem.constraints.cols()) return false;
  const Vec lhs = mat_vec(problem.constraints, certificate.y);
  for (const Rational& entry : lhs) {
    if (entry < 0) return false;
  }
  return dot(problem.target, certificate.y) < 0;
}

namespace detail {

inline void pivot_step(std::vector<Vec>& tableau, std::vector<std::size_t>& basis,
                       std::size_t leave, std::size_t enter) {
  const std::size_t width = tableau[leave].size();
  Rational pivot(0);
  pivot = tableau[leave][enter];
  for (std::size_t j = 0; j < width; ++j) tableau[leave][j] /= pivot;
  for (std::size_t r = 0; r < tableau.size(); ++r) {
    if (r == leave || tableau[r][enter] == 0) continue;
    Rational factor(0);
    factor = tableau[r][enter];
    for (std::size_t j = 0; j < width; ++j) tableau[r][j] -= factor * tableau[leave][j];
  }
  basis[leave] = enter;
}

}  // namespace detail

/// Exact phase-1 simplex. Bland's pivot rule guarantees finite termination,
/// so the solver always returns either a feasible point or a verified Farkas
/// certificate; both are re-checked before being handed back.
inline FeasibilityOutcome solve_feasibility(const FeasibilityProblem& problem) {
  const std::size_t p = problem.constraints.rows();
  const std::size_t q = problem.constraints.cols();
  if (problem.target.size() != q) {
    throw std::invalid_argument("solve_feasibility: target length must match constraint count");
  }
  if (q == 0) return Vec(p, Rational(0));

  // Standard form A x = b, x >= 0 with A = constraintsᵗ (q x p), b = target.
  // Rows with negative b are sign-flipped; one artificial variable per row.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const std::size_t rhs = p + q;
  std::vector<int> sign(q, 1);
  std::vector<Vec> tableau(q + 1, Vec(p + q + 1, Rational(0)));
  for (std::size_t i = 0; i < q; ++i) {
    sign[i] = problem.target[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < p; ++j) {
      tableau[i][j] = problem.constraints(j, i);
      if (sign[i] < 0) tableau[i][j] = -tableau[i][j];
    }
    tableau[i][p + i] = 1;
    tableau[i][rhs] = problem.target[i];
    if (sign[i] < 0) tableau[i][rhs] = -tableau[i][rhs];
  }
  std::vector<std::size_t> basis(q);
  for (std::size_t i = 0; i < q; ++i) basis[i] = p + i;

  // Objective row: reduced costs for min Σ artificials under the artificial
  // basis; entry at rhs holds -objective.
  Vec& objective = tableau[q];
  for (std::size_t j = 0; j < p; ++j) {
    Rational sum(0);
    for (std::size_t i = 0; i < q; ++i) sum += tableau[i][j];
    objective[j] = -sum;
  }
  {
    Rational sum(0);
    for (std::size_t i = 0; i < q; ++i) sum += tableau[i][rhs];
    objective[rhs] = -sum;
  }

  for (;;) {
    std::size_t enter = npos;
    for (std::size_t j = 0; j < p + q; ++j) {
      if (objective[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == npos) break;
    std::size_t leave = npos;
    Rational best_ratio(0);
    for (std::size_t i = 0; i < q; ++i) {
      if (tableau[i][enter] <= 0) continue;
      Rational ratio(0);
      ratio = tableau[i][rhs] / tableau[i][enter];
      if (leave == npos || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == npos) {
      throw std::logic_error("solve_feasibility: phase-1 objective unbounded");
    }
    detail::pivot_step(tableau, basis, leave, enter);
  }

  Rational optimum(0);
  optimum = -objective[rhs];
  if (optimum == 0) {
    Vec point(p, Rational(0));
    for (std::size_t i = 0; i < q; ++i) {
      if (basis[i] < p) point[basis[i]] = tableau[i][rhs];
    }
    if (!verify_feasible_point(problem, point)) {
      throw std::logic_error("solve_feasibility: produced point failed its own check");
    }
    return point;
  }

  // Optimal dual row: multiplier u_i = 1 - (reduced cost of artificial i);
  // u proves infeasibility of the sign-flipped system, -sign·u of the
  // original one.
  Vec y(q, Rational(0));
  for (std::size_t i = 0; i < q; ++i) {
    Rational u(0);
    u = Rational(1) - objective[p + i];
    y[i] = sign[i] < 0 ? u : -u;
  }
  FarkasCertificate certificate{std::move(y)};
  if (!verify_certificate(problem, certificate)) {
    throw std::logic_error("solve_feasibility: produced certificate failed its own check");
  }
  return certificate;
}

}  // namespace gwmaj
