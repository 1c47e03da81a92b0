#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gwmaj/majorization.hpp"

namespace gwmaj {

/// Column-stacking vectorization: vec(X)[c*n + r] = X(r, c).
inline Vec vec_columns(const Matrix& x) {
  Vec result;
  result.reserve(x.rows() * x.cols());
  for (std::size_t c = 0; c < x.cols(); ++c)
    for (std::size_t r = 0; r < x.rows(); ++r) result.push_back(x(r, c));
  return result;
}

inline Matrix unvec_columns(const Vec& v, std::size_t n, std::size_t m) {
  if (v.size() != n * m) throw std::invalid_argument("unvec_columns: length mismatch");
  Matrix result(n, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < n; ++r) result(r, c) = v[c * n + r];
  return result;
}

/// Kronecker product: block (i, j) of the result is p(i,j)·Q.
inline Matrix kron(const Matrix& p, const Matrix& q) {
  Matrix result(p.rows() * q.rows(), p.cols() * q.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j) == 0) continue;
      for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < q.cols(); ++c)
          result(i * q.rows() + r, j * q.cols() + c) = p(i, j) * q(r, c);
    }
  return result;
}

/// Linear operator on n×m matrices, stored as its nm×nm matrix under the
/// column-stacking convention: T(X) = unvec(M·vec(X)). With this convention
/// T(X) = AXB exactly when M = transpose(B) ⊗ A.
class MatrixOperator {
 public:
  MatrixOperator(std::size_t n, std::size_t m, Matrix mat)
      : n_(n), m_(m), mat_(std::move(mat)) {
    if (n_ == 0 || m_ == 0 || mat_.rows() != n_ * m_ || mat_.cols() != n_ * m_) {
      throw std::invalid_argument("MatrixOperator: matrix must be (n*m) x (n*m)");
    }
  }

  static MatrixOperator identity(std::size_t n, std::size_t m) {
    return MatrixOperator(n, m, Matrix::identity(n * m));
  }

  /// The operator X ↦ A X B.
  static MatrixOperator from_factors(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols()) {
      throw std::invalid_argument("MatrixOperator::from_factors: factors must be square");
    }
    return MatrixOperator(a.rows(), b.rows(), kron(transpose(b), a));
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  const Matrix& matrix() const { return mat_; }

  Matrix apply(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != m_) {
      throw std::invalid_argument("MatrixOperator::apply: operand shape mismatch");
    }
    return unvec_columns(mat_vec(mat_, vec_columns(x)), n_, m_);
  }

 private:
  std::size_t n_;
  std::size_t m_;
  Matrix mat_;
};

/// The m×m grid of n×n blocks of an operator: column i of T(X) equals
/// Σ_j block(i,j)·(column j of X).
struct BlockGrid {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Matrix> blocks;  // (i, j) at index i*m + j

  const Matrix& block(std::size_t i, std::size_t j) const { return blocks[i * m + j]; }
};

inline BlockGrid block_decompose(const MatrixOperator& t) {
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  BlockGrid grid{n, m, {}};
  grid.blocks.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix block(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) block(r, c) = t.matrix()(i * n + r, j * n + c);
      grid.blocks.push_back(std::move(block));
    }
  return grid;
}

struct KronFactors {
  Matrix a;  // n x n
  Matrix b;  // m x m
};

/// Recognizes T(X) = AXB. Exists iff every block is a scalar multiple of a
/// single nonzero matrix, i.e. the m²×n² rearrangement whose rows are the
/// flattened blocks has rank exactly 1. The scalar gauge (A, B) ↦ (cA, B/c)
/// is fixed toward A·e = e whenever the candidate's row sums are a nonzero
/// multiple of e; otherwise the first nonzero entry of A becomes 1.
inline std::optional<KronFactors> kron_factorize(const MatrixOperator& t) {
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  const BlockGrid grid = block_decompose(t);

  const Matrix* anchor = nullptr;
  std::size_t pivot_r = 0, pivot_c = 0;
  for (std::size_t i = 0; i < m && anchor == nullptr; ++i) {
    for (std::size_t j = 0; j < m && anchor == nullptr; ++j) {
      const Matrix& block = grid.block(i, j);
      for (std::size_t r = 0; r < n && anchor == nullptr; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (block(r, c) != 0) {
            anchor = &block;
            pivot_r = r;
            pivot_c = c;
            break;
          }
        }
    }
  }
  if (anchor == nullptr) return std::nullopt;  // zero operator

  Matrix beta(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Matrix& block = grid.block(i, j);
      Rational factor(0);
      factor = block(pivot_r, pivot_c) / (*anchor)(pivot_r, pivot_c);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          if (block(r, c) != factor * (*anchor)(r, c)) return std::nullopt;  // rank >= 2
        }
      beta(i, j) = factor;
    }
  }

  const Vec row_sums = mat_vec(*anchor, ones_vector(n));
  Rational scale(0);
  if (in_span_of_ones(row_sums) && row_sums.front() != 0) {
    scale = row_sums.front();
  } else {
    scale = (*anchor)(pivot_r, pivot_c);  // first nonzero entry, row-major
  }
  Rational inv_scale(0);
  inv_scale = Rational(1) / scale;
  KronFactors factors{inv_scale * (*anchor), Matrix(m, m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) factors.b(j, i) = beta(i, j) * scale;
  return factors;
}

enum class VectorPreserverKind { InvertibleGRow, SingularKernelE, Zero };

inline const char* vector_preserver_kind_name(VectorPreserverKind kind) {
  switch (kind) {
    case VectorPreserverKind::InvertibleGRow: return "invertible-g-row";
    case VectorPreserverKind::SingularKernelE: return "singular-kernel-e";
    case VectorPreserverKind::Zero: return "zero";
  }
  return "?";
}

enum class RejectReason {
  OperatorSingular,
  NotKronecker,
  ANotGRowStochastic,
  ASingular,
  BSingular,
  NotPermutation,
  NotVectorGwForm,
};

inline const char* reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::OperatorSingular: return "operator-singular";
    case RejectReason::NotKronecker: return "not-kronecker";
    case RejectReason::ANotGRowStochastic: return "a-not-g-row-stochastic";
    case RejectReason::ASingular: return "a-singular";
    case RejectReason::BSingular: return "b-singular";
    case RejectReason::NotPermutation: return "not-permutation";
    case RejectReason::NotVectorGwForm: return "not-vector-gw-form";
  }
  return "?";
}

struct StrongGwPreserver {
  Matrix a;  // invertible, in GR_n
  Matrix b;  // invertible
};

struct StrongMatrixPreserver {
  Matrix p;  // permutation
  Matrix l;  // invertible
};

struct VectorPreserver {
  Rational alpha;
  Matrix r;
  VectorPreserverKind kind;
};

/// X ≻ Y on one side only: `forward` means X ≻ Y holds while T(X) ≻ T(Y)
/// fails; otherwise T(X) ≻ T(Y) holds while X ≻ Y fails.
struct PreserverCounterexample {
  Matrix x;
  Matrix y;
  bool forward = true;
};

struct NotPreserver {
  RejectReason reason;
  std::string detail;
  std::optional<PreserverCounterexample> counterexample;
};

using PreserverClassification =
    std::variant<StrongGwPreserver, StrongMatrixPreserver, VectorPreserver, NotPreserver>;

/// Classifies a linear operator on 𝔽ⁿ as a gw-majorization preserver.
/// T preserves gw-majorization iff T = α·R where either R is invertible with
/// Re = e, or ker(R) = span{e} and e ∉ Im(R).
inline PreserverClassification classify_vector_preserver(const Matrix& t) {
  if (t.rows() == 0 || t.rows() != t.cols()) {
    throw std::invalid_argument("classify_vector_preserver: nonempty square matrix required");
  }
  const std::size_t n = t.rows();
  if (t.is_zero()) {
    return VectorPreserver{Rational(0), Matrix::zero(n, n), VectorPreserverKind::Zero};
  }
  const std::optional<Matrix> inv = try_inverse(t);
  if (inv) {
    const Vec v = mat_vec(*inv, ones_vector(n));
    if (in_span_of_ones(v)) {
      // v = r·e with r != 0, so (rT)e = e and T = (1/r)·(rT).
      const Rational r = v.front();
      return VectorPreserver{Rational(1) / r, r * t, VectorPreserverKind::InvertibleGRow};
    }
    return NotPreserver{RejectReason::NotVectorGwForm,
                        "invertible operator does not map span{e} onto span{e}", std::nullopt};
  }
  const std::vector<Vec> kernel = kernel_basis(t);
  if (kernel.size() == 1 && in_span_of_ones(kernel.front()) &&
      !image_contains(t, ones_vector(n))) {
    return VectorPreserver{Rational(1), t, VectorPreserverKind::SingularKernelE};
  }
  return NotPreserver{RejectReason::NotVectorGwForm,
                      "singular operator needs kernel span{e} with e outside its image",
                      std::nullopt};
}

/// Strong gw-majorization preserver test: T qualifies iff T(X) = AXB with
/// A invertible in GR_n and B invertible. For m = 1 this reduces to the
/// invertible-g-row vector class.
inline PreserverClassification is_strong_gw_preserver(const MatrixOperator& t) {
  if (t.m() == 1) {
    PreserverClassification vector_class = classify_vector_preserver(t.matrix());
    if (const auto* vp = std::get_if<VectorPreserver>(&vector_class)) {
      switch (vp->kind) {
        case VectorPreserverKind::InvertibleGRow: {
          Matrix b(1, 1);
          b(0, 0) = vp->alpha;
          return StrongGwPreserver{vp->r, std::move(b)};
        }
        case VectorPreserverKind::Zero:
          return NotPreserver{RejectReason::OperatorSingular,
                              "zero operator is not invertible", std::nullopt};
        case VectorPreserverKind::SingularKernelE:
          return NotPreserver{RejectReason::ASingular,
                              "operator preserves gw-majorization but its alpha*R form has "
                              "singular R, so preservation is not strong",
                              std::nullopt};
      }
    }
    return vector_class;
  }
  const std::optional<KronFactors> factors = kron_factorize(t);
  if (!factors) {
    if (t.matrix().is_zero()) {
      return NotPreserver{RejectReason::OperatorSingular, "zero operator is not invertible",
                          std::nullopt};
    }
    return NotPreserver{RejectReason::NotKronecker,
                        "operator is not of the form X -> AXB (block rearrangement has rank >= 2)",
                        std::nullopt};
  }
  if (!is_g_row_stochastic(factors->a)) {
    return NotPreserver{RejectReason::ANotGRowStochastic,
                        "left factor has no scaling with unit row sums", std::nullopt};
  }
  if (rank(factors->a) < t.n()) {
    return NotPreserver{RejectReason::ASingular, "left factor is singular", std::nullopt};
  }
  if (rank(factors->b) < t.m()) {
    return NotPreserver{RejectReason::BSingular, "right factor is singular", std::nullopt};
  }
  return StrongGwPreserver{factors->a, factors->b};
}

/// Strong matrix-majorization preserver test on M_n: T qualifies iff
/// T(X) = PXL with P a permutation and L invertible. The A·e = e gauge makes
/// the permutation candidate unique, with no residual scalar freedom.
inline PreserverClassification is_strong_matrix_majorization_preserver(const MatrixOperator& t) {
  if (t.n() != t.m()) {
    throw std::invalid_argument(
        "is_strong_matrix_majorization_preserver: operator must act on square matrices");
  }
  const std::optional<KronFactors> factors = kron_factorize(t);
  if (!factors) {
    if (t.matrix().is_zero()) {
      return NotPreserver{RejectReason::OperatorSingular, "zero operator is not invertible",
                          std::nullopt};
    }
    return NotPreserver{RejectReason::NotKronecker,
                        "operator is not of the form X -> PXL (block rearrangement has rank >= 2)",
                        std::nullopt};
  }
  if (!is_permutation(factors->a)) {
    return NotPreserver{RejectReason::NotPermutation, "left factor is not a permutation matrix",
                        std::nullopt};
  }
  if (rank(factors->b) < t.m()) {
    return NotPreserver{RejectReason::BSingular, "right factor is singular", std::nullopt};
  }
  return StrongMatrixPreserver{factors->a, factors->b};
}

struct SynthesizedPreserver {
  MatrixOperator op;
  Matrix a;
  Matrix b;
};

/// Draws invertible A in GR_n and invertible B in M_m and returns X ↦ AXB
/// together with its ground-truth factors.
inline SynthesizedPreserver synth_strong_gw_preserver(std::size_t n, std::size_t m, Rng& rng) {
  Matrix a = random_invertible_g_row_stochastic(n, rng).matrix();
  Matrix b = random_invertible_matrix(m, rng);
  MatrixOperator op = MatrixOperator::from_factors(a, b);
  return SynthesizedPreserver{std::move(op), std::move(a), std::move(b)};
}

/// Randomized counterexample search for strong preservation of `relation`
/// (gw or matrix). Each trial plants a related pair (X, RX) and checks the
/// image pair; when T is invertible the reverse direction is sampled through
/// T⁻¹ as well. Trials use substreams of one master seed, so the first hit
/// is deterministic for a given rng state.
///
/// Once n > m, a generic X gw-dominates every matrix (rank [X | e] = m+1),
/// which silences both directions; violations of a non-preserver then live
/// on the degenerate set only. Every third trial therefore draws the rows of
/// X from just m distinct values, capping rank [X | e] at m, and another
/// third uses tiny integers to raise collision rates.
inline std::optional<PreserverCounterexample> falsify_strong_preservation(
    const MatrixOperator& t, Relation relation, std::size_t trials, Rng& rng) {
  if (relation == Relation::Gs) {
    throw std::invalid_argument("falsify_strong_preservation: relation must be gw or matrix");
  }
  if (trials == 0) {
    throw std::invalid_argument("falsify_strong_preservation: trials must be >= 1");
  }
  const std::size_t n = t.n();
  const std::size_t m = t.m();
  const std::uint64_t master = rng();
  const std::optional<Matrix> inverse_matrix = try_inverse(t.matrix());
  const auto draw_witness = [&](Rng& sub) {
    return relation == Relation::Gw ? random_g_row_stochastic(n, sub).matrix()
                                    : random_row_stochastic(n, sub).matrix();
  };
  const auto draw_operand = [&](Rng& sub, std::size_t variant) {
    if (variant == 1) {
      Matrix x(n, m);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) x(r, c) = Rational(draw_int(sub, -2, 2));
      return x;
    }
    if (variant == 2) {
      std::vector<Vec> pool(m, Vec(m, Rational(0)));
      for (Vec& row : pool) {
        for (Rational& entry : row) entry = draw_rational(sub);
      }
      Matrix x(n, m);
      for (std::size_t r = 0; r < n; ++r) {
        x.set_row(r, pool[static_cast<std::size_t>(draw_int(sub, 0, static_cast<long>(m) - 1))]);
      }
      return x;
    }
    return random_matrix(n, m, sub);
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng sub(mix_seed(master, trial));
    const Matrix x = draw_operand(sub, trial % 3);
    const Matrix y = draw_witness(sub) * x;
    const Matrix tx = t.apply(x);
    if (!majorizes(relation, tx, t.apply(y)).holds) {
      return PreserverCounterexample{x, y, true};
    }
    if (inverse_matrix) {
      const Matrix y_image = draw_witness(sub) * tx;
      const Matrix y_back = unvec_columns(mat_vec(*inverse_matrix, vec_columns(y_image)), n, m);
      if (!majorizes(relation, x, y_back).holds) {
        return PreserverCounterexample{x, y_back, false};
      }
    }
  }
  return std::nullopt;
}

/// True iff A commutes with every matrix in GR_n, which happens only for
/// A = I. It suffices to check a finite affinely-spanning subset:
/// {I} ∪ {I + E_ij - E_ik : j ≠ k} ∪ {e·e_jᵗ}.
inline bool is_in_gr_commutant(const Matrix& a) {
  if (!is_g_row_stochastic(a)) {
    throw std::invalid_argument("is_in_gr_commutant: input must be g-row stochastic");
  }
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k) continue;
        Matrix g = Matrix::identity(n);
        g(i, j) += 1;
        g(i, k) -= 1;
        if (a * g != g * a) return false;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Matrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) g(r, j) = 1;
    if (a * g != g * a) return false;
  }
  return true;
}

}  // namespace gwmaj
