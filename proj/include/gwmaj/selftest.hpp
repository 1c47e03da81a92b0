#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwmaj/preservers.hpp"

namespace gwmaj {

/// One verified property. Hard properties gate the verify exit code; soft
/// ones are statistical and only reported.
struct PropertyResult {
  std::string name;
  bool passed = true;
  bool hard = true;
  std::string detail;
};

struct SelftestOptions {
  std::size_t trials = 50;
  std::size_t max_n = 4;
  std::size_t max_m = 4;
  std::uint64_t seed = 0;
};

/// Invertible operator that is the sum of two Kronecker terms with linearly
/// independent factor pairs, hence never of the form X -> AXB. Requires
/// n, m >= 2.
inline MatrixOperator random_two_term_operator(std::size_t n, std::size_t m, Rng& rng) {
  if (n < 2 || m < 2) {
    throw std::invalid_argument("random_two_term_operator: n and m must be >= 2");
  }
  const auto independent = [](const Matrix& first, const Matrix& second) {
    Matrix flat(2, first.rows() * first.cols());
    std::size_t col = 0;
    for (std::size_t i = 0; i < first.rows(); ++i)
      for (std::size_t j = 0; j < first.cols(); ++j) {
        flat(0, col) = first(i, j);
        flat(1, col) = second(i, j);
        ++col;
      }
    return rank(flat) == 2;
  };
  for (std::size_t attempt = 0; attempt < 1000; ++attempt) {
    const Matrix a1 = random_matrix(n, n, rng);
    const Matrix a2 = random_matrix(n, n, rng);
    const Matrix b1 = random_matrix(m, m, rng);
    const Matrix b2 = random_matrix(m, m, rng);
    if (!independent(a1, a2) || !independent(b1, b2)) continue;
    Matrix sum = kron(transpose(b1), a1) + kron(transpose(b2), a2);
    if (rank(sum) == n * m) return MatrixOperator(n, m, std::move(sum));
  }
  throw GenerationError("random_two_term_operator: retry cap exhausted");
}

namespace selftest_detail {

inline FeasibilityProblem random_problem(Rng& rng) {
  const std::size_t p = static_cast<std::size_t>(draw_int(rng, 1, 4));
  const std::size_t q = static_cast<std::size_t>(draw_int(rng, 0, 4));
  Matrix m = random_matrix(p, q, rng);
  Vec target(q, Rational(0));
  if (draw_int(rng, 0, 1) == 0) {
    Vec planted(p);
    for (auto& entry : planted) entry = draw_rational(rng, 0, 9);
    target = vec_mat(planted, m);
  } else {
    for (auto& entry : target) entry = draw_rational(rng);
  }
  return FeasibilityProblem{std::move(m), std::move(target)};
}

inline std::string at_instance(std::size_t index) {
  return "failed at instance " + std::to_string(index);
}

}  // namespace selftest_detail

inline std::vector<PropertyResult> run_lp_suite(const SelftestOptions& options) {
  std::vector<PropertyResult> results;

  {
    PropertyResult property{"lp/outcome-soundness", true, true, ""};
    Rng rng(mix_seed(options.seed, 1));
    const std::size_t count = options.trials * 10;
    for (std::size_t i = 0; i < count && property.passed; ++i) {
      const FeasibilityProblem problem = selftest_detail::random_problem(rng);
      const FeasibilityOutcome outcome = solve_feasibility(problem);
      const bool sound = is_feasible(outcome)
                             ? verify_feasible_point(problem, feasible_point(outcome))
                             : verify_certificate(problem, infeasibility_certificate(outcome));
      if (!sound) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(count) + " problems re-checked";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"lp/determinism", true, true, ""};
    Rng rng(mix_seed(options.seed, 2));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const FeasibilityProblem problem = selftest_detail::random_problem(rng);
      const FeasibilityOutcome first = solve_feasibility(problem);
      const FeasibilityOutcome second = solve_feasibility(problem);
      bool same = is_feasible(first) == is_feasible(second);
      if (same) {
        same = is_feasible(first)
                   ? feasible_point(first) == feasible_point(second)
                   : infeasibility_certificate(first).y == infeasibility_certificate(second).y;
      }
      if (!same) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " repeated solves";
    results.push_back(std::move(property));
  }

  return results;
}

inline std::vector<PropertyResult> run_relations_suite(const SelftestOptions& options) {
  std::vector<PropertyResult> results;
  const long max_n = static_cast<long>(options.max_n);
  const long max_m = static_cast<long>(options.max_m);

  {
    PropertyResult property{"relations/witness-soundness", true, true, ""};
    Rng rng(mix_seed(options.seed, 10));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const Matrix a = random_matrix(n, m, rng);
      Matrix b(n, m);
      switch (draw_int(rng, 0, 2)) {
        case 0: b = random_row_stochastic(n, rng).matrix() * a; break;
        case 1: b = random_g_row_stochastic(n, rng).matrix() * a; break;
        default: b = random_matrix(n, m, rng); break;
      }
      for (Relation relation : {Relation::Matrix, Relation::Gw, Relation::Gs}) {
        const MajorizationVerdict verdict = majorizes(relation, a, b);
        if (verdict.holds &&
            !verify_majorization_witness(relation, a, b, *verdict.witness)) {
          property.passed = false;
        }
        if (!verdict.holds && relation == Relation::Matrix &&
            !(verdict.certificate &&
              verify_row_certificate(a, b, *verdict.failed_row, *verdict.certificate))) {
          property.passed = false;
        }
      }
      if (!property.passed) property.detail = selftest_detail::at_instance(i);
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " instances, 3 relations";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"relations/gw-completeness", true, true, ""};
    Rng rng(mix_seed(options.seed, 11));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const Matrix a = random_matrix(n, m, rng);
      const Matrix b = random_g_row_stochastic(n, rng).matrix() * a;
      if (!gw_majorizes(a, b).holds) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " planted witnesses";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"relations/hierarchy", true, true, ""};
    Rng rng(mix_seed(options.seed, 12));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const Matrix a = random_matrix(n, m, rng);
      const Matrix via_row = random_row_stochastic(n, rng).matrix() * a;
      const Matrix via_doubly = random_g_doubly_stochastic(n, rng).matrix() * a;
      if (!matrix_majorizes(a, via_row).holds || !gw_majorizes(a, via_row).holds ||
          !gs_majorizes(a, via_doubly).holds || !gw_majorizes(a, via_doubly).holds) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) {
      property.detail = std::to_string(options.trials) + " instances: matrix=>gw and gs=>gw";
    }
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"relations/equivalence-properties", true, true, ""};
    Rng rng(mix_seed(options.seed, 13));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 2, max_n < 2 ? 2 : max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const Matrix x = random_matrix(n, m, rng);
      const Matrix y = draw_int(rng, 0, 1) == 0
                           ? random_g_row_stochastic(n, rng).matrix() * x
                           : random_matrix(n, m, rng);
      const bool base = gw_majorizes(x, y).holds;
      const Matrix a = random_invertible_g_row_stochastic(n, rng).matrix();
      const Matrix b = random_invertible_g_row_stochastic(n, rng).matrix();
      const Matrix c = random_invertible_matrix(m, rng);
      Rational alpha(0);
      do {
        alpha = draw_rational(rng);
      } while (alpha == 0);
      const Rational beta = draw_rational(rng);
      const Matrix jnm = Matrix::ones(n, m);
      if (gw_majorizes(a * x, b * y).holds != base ||
          gw_majorizes(alpha * x + beta * jnm, alpha * y + beta * jnm).holds != base ||
          gw_majorizes(x * c, y * c).holds != base) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) {
      property.detail = std::to_string(options.trials) + " instances, 4 equivalent forms";
    }
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"relations/vector-lemma", true, true, ""};
    Rng rng(mix_seed(options.seed, 14));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 2, max_n < 2 ? 2 : max_n));
      Vec x(n);
      do {
        for (auto& entry : x) entry = draw_rational(rng);
      } while (in_span_of_ones(x));
      Vec y(n);
      for (auto& entry : y) entry = draw_rational(rng);
      bool ok = gw_dominates_all(x);
      if (ok) {
        const Matrix witness = vector_gw_witness(x, y);
        ok = is_g_row_stochastic(witness) && mat_vec(witness, x) == y;
      }
      if (!ok) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " dominating vectors";
    results.push_back(std::move(property));
  }

  return results;
}

inline std::vector<PropertyResult> run_theorems_suite(const SelftestOptions& options) {
  std::vector<PropertyResult> results;
  const long max_n = static_cast<long>(options.max_n);
  const long max_m = static_cast<long>(options.max_m);

  {
    PropertyResult property{"theorems/roundtrip-exact-recovery", true, true, ""};
    Rng rng(mix_seed(options.seed, 20));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const SynthesizedPreserver synth = synth_strong_gw_preserver(n, m, rng);
      const PreserverClassification c = is_strong_gw_preserver(synth.op);
      const auto* preserver = std::get_if<StrongGwPreserver>(&c);
      const bool ok = preserver != nullptr && preserver->a == synth.a &&
                      preserver->b == synth.b && rank(synth.op.matrix()) == n * m;
      if (!ok) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " synthesized operators";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/preserver-falsifier-silent", true, true, ""};
    Rng rng(mix_seed(options.seed, 21));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, max_m));
      const SynthesizedPreserver synth = synth_strong_gw_preserver(n, m, rng);
      if (falsify_strong_preservation(synth.op, Relation::Gw, 25, rng).has_value()) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) {
      property.detail = std::to_string(options.trials) + " preservers x 25 trials";
    }
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/pxl-strongly-preserves-both", true, true, ""};
    Rng rng(mix_seed(options.seed, 22));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const Matrix p = random_permutation(n, rng);
      const Matrix l = random_invertible_matrix(n, rng);
      const MatrixOperator t = MatrixOperator::from_factors(p, l);
      const PreserverClassification matrix_class = is_strong_matrix_majorization_preserver(t);
      const auto* as_pxl = std::get_if<StrongMatrixPreserver>(&matrix_class);
      const bool ok = as_pxl != nullptr && as_pxl->p == p && as_pxl->l == l &&
                      std::holds_alternative<StrongGwPreserver>(is_strong_gw_preserver(t));
      if (!ok) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " PXL operators";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/two-term-structural-rejection", true, true, ""};
    Rng rng(mix_seed(options.seed, 23));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 2, max_n < 2 ? 2 : max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 2, max_m < 2 ? 2 : max_m));
      const MatrixOperator t = random_two_term_operator(n, m, rng);
      const PreserverClassification c = is_strong_gw_preserver(t);
      const auto* rejected = std::get_if<NotPreserver>(&c);
      if (rejected == nullptr || rejected->reason != RejectReason::NotKronecker) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " two-term operators";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/two-term-falsified", true, false, ""};
    Rng rng(mix_seed(options.seed, 24));
    std::size_t found = 0;
    std::string escapes;
    for (std::size_t i = 0; i < options.trials; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 2, max_n < 2 ? 2 : max_n));
      const std::size_t m = static_cast<std::size_t>(draw_int(rng, 2, max_m < 2 ? 2 : max_m));
      const MatrixOperator t = random_two_term_operator(n, m, rng);
      if (falsify_strong_preservation(t, Relation::Gw, 500, rng).has_value()) {
        ++found;
      } else {
        escapes += (escapes.empty() ? "escaped: " : ", ") + std::to_string(i);
      }
    }
    property.passed = found * 100 >= options.trials * 95;
    property.detail = std::to_string(found) + "/" + std::to_string(options.trials) +
                      " falsified within 500 trials" + (escapes.empty() ? "" : "; " + escapes);
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/commutant-only-identity", true, true, ""};
    Rng rng(mix_seed(options.seed, 25));
    bool ok = is_in_gr_commutant(Matrix::identity(options.max_n));
    for (std::size_t i = 0; i < options.trials && ok; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const Matrix a = random_g_row_stochastic(n, rng).matrix();
      ok = is_in_gr_commutant(a) == (a == Matrix::identity(n));
    }
    property.passed = ok;
    property.detail = ok ? std::to_string(options.trials) + " random inputs plus I" : "mismatch";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/affine-decomposition", true, true, ""};
    Rng rng(mix_seed(options.seed, 26));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 6));
      const GRowStochastic r = random_g_row_stochastic(n, rng);
      const AffineCombination combination = affine_decompose(r);
      bool ok = combination.coefficient_sum() == 1 && combination.reconstruct() == r.matrix();
      for (const auto& [coeff, part] : combination.terms) {
        ok = ok && is_row_stochastic(part.matrix());
      }
      if (!ok) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " decompositions";
    results.push_back(std::move(property));
  }

  {
    PropertyResult property{"theorems/grs-closure", true, true, ""};
    Rng rng(mix_seed(options.seed, 27));
    for (std::size_t i = 0; i < options.trials && property.passed; ++i) {
      const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, max_n));
      const Matrix a = random_g_row_stochastic(n, rng).matrix();
      const Matrix b = random_g_row_stochastic(n, rng).matrix();
      const Matrix c = random_invertible_g_row_stochastic(n, rng).matrix();
      if (!is_g_row_stochastic(a * b) || !is_g_row_stochastic(inverse(c))) {
        property.passed = false;
        property.detail = selftest_detail::at_instance(i);
      }
    }
    if (property.passed) property.detail = std::to_string(options.trials) + " products and inverses";
    results.push_back(std::move(property));
  }

  return results;
}

}  // namespace gwmaj
