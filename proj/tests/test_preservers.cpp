#include <catch2/catch_amalgamated.hpp>

#include "gwmaj/preservers.hpp"

using namespace gwmaj;

namespace {

const Matrix kExampleA{{1, 0}, {-1, 2}};

MatrixOperator example_operator() {
  // T(X) = A X on M_2
  return MatrixOperator::from_factors(kExampleA, Matrix::identity(2));
}

}  // namespace

TEST_CASE("vectorization round trip and basis action") {
  Rng rng(501);
  const Matrix x = random_matrix(3, 2, rng);
  CHECK(unvec_columns(vec_columns(x), 3, 2) == x);
  CHECK(MatrixOperator::identity(3, 2).apply(x) == x);
}

TEST_CASE("operator from factors acts as X -> AXB") {
  Rng rng(502);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const Matrix a = random_matrix(n, n, rng);
    const Matrix b = random_matrix(m, m, rng);
    const MatrixOperator t = MatrixOperator::from_factors(a, b);
    const Matrix x = random_matrix(n, m, rng);
    CHECK(t.apply(x) == a * x * b);
  }
}

TEST_CASE("block decomposition of the identity, factored and zero operators") {
  const BlockGrid id = block_decompose(MatrixOperator::identity(2, 3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(id.block(i, j) == (i == j ? Matrix::identity(2) : Matrix::zero(2, 2)));
    }

  Rng rng(503);
  const Matrix a = random_matrix(2, 2, rng);
  const Matrix b = random_matrix(3, 3, rng);
  const BlockGrid grid = block_decompose(MatrixOperator::from_factors(a, b));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(grid.block(i, j) == b(j, i) * a);
    }

  const BlockGrid zero = block_decompose(MatrixOperator(2, 2, Matrix::zero(4, 4)));
  for (const Matrix& block : zero.blocks) CHECK(block.is_zero());
}

TEST_CASE("block grid reproduces the operator column by column") {
  Rng rng(504);
  const std::size_t n = 3, m = 3;
  const MatrixOperator t(n, m, random_matrix(n * m, n * m, rng));
  const BlockGrid grid = block_decompose(t);
  for (std::size_t br = 0; br < n; ++br) {
    for (std::size_t bc = 0; bc < m; ++bc) {
      Matrix basis(n, m);
      basis(br, bc) = 1;
      const Matrix image = t.apply(basis);
      for (std::size_t i = 0; i < m; ++i) {
        CHECK(image.column(i) == grid.block(i, bc).column(br));
      }
    }
  }
}

TEST_CASE("kron factorization of the identity operator") {
  const std::optional<KronFactors> factors = kron_factorize(MatrixOperator::identity(2, 2));
  REQUIRE(factors.has_value());
  CHECK(factors->a == Matrix::identity(2));
  CHECK(factors->b == Matrix::identity(2));
}

TEST_CASE("kron factorization recovers the g-row stochastic gauge") {
  const std::optional<KronFactors> factors = kron_factorize(example_operator());
  REQUIRE(factors.has_value());
  CHECK(factors->a == kExampleA);
  CHECK(factors->b == Matrix::identity(2));
}

TEST_CASE("kron factorization rejects rank-two rearrangements") {
  const Matrix a1{{1, 0}, {0, 1}};
  const Matrix a2{{0, 1}, {1, 0}};
  const Matrix b1{{1, 0}, {0, 2}};
  const Matrix b2{{0, 1}, {3, 0}};
  const Matrix sum = kron(transpose(b1), a1) + kron(transpose(b2), a2);
  CHECK_FALSE(kron_factorize(MatrixOperator(2, 2, sum)).has_value());
  CHECK_FALSE(kron_factorize(MatrixOperator(2, 2, Matrix::zero(4, 4))).has_value());
}

TEST_CASE("vector preserver classification") {
  const PreserverClassification id_class = classify_vector_preserver(Matrix::identity(2));
  const auto* id_preserver = std::get_if<VectorPreserver>(&id_class);
  REQUIRE(id_preserver != nullptr);
  CHECK(id_preserver->alpha == 1);
  CHECK(id_preserver->r == Matrix::identity(2));
  CHECK(id_preserver->kind == VectorPreserverKind::InvertibleGRow);

  const Rational half(1, 2);
  const Matrix centered{{half, -half}, {-half, half}};  // I - J/2
  const PreserverClassification centered_class = classify_vector_preserver(centered);
  const auto* centered_preserver = std::get_if<VectorPreserver>(&centered_class);
  REQUIRE(centered_preserver != nullptr);
  CHECK(centered_preserver->alpha == 1);
  CHECK(centered_preserver->r == centered);
  CHECK(centered_preserver->kind == VectorPreserverKind::SingularKernelE);

  const PreserverClassification ones_class = classify_vector_preserver(Matrix::ones(2, 2));
  CHECK(std::holds_alternative<NotPreserver>(ones_class));

  const PreserverClassification zero_class = classify_vector_preserver(Matrix::zero(3, 3));
  const auto* zero_preserver = std::get_if<VectorPreserver>(&zero_class);
  REQUIRE(zero_preserver != nullptr);
  CHECK(zero_preserver->kind == VectorPreserverKind::Zero);
  CHECK(zero_preserver->alpha == 0);
}

TEST_CASE("scaled g-row stochastic maps classify as invertible vector preservers") {
  Rng rng(505);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const Matrix r = random_invertible_g_row_stochastic(n, rng).matrix();
    Rational alpha(0);
    do {
      alpha = draw_rational(rng);
    } while (alpha == 0);
    const PreserverClassification c = classify_vector_preserver(alpha * r);
    const auto* preserver = std::get_if<VectorPreserver>(&c);
    REQUIRE(preserver != nullptr);
    CHECK(preserver->kind == VectorPreserverKind::InvertibleGRow);
    CHECK(preserver->alpha == alpha);
    CHECK(preserver->r == r);
  }
}

TEST_CASE("the example operator strongly preserves gw but not matrix majorization") {
  const MatrixOperator t = example_operator();

  const PreserverClassification gw_class = is_strong_gw_preserver(t);
  const auto* gw = std::get_if<StrongGwPreserver>(&gw_class);
  REQUIRE(gw != nullptr);
  CHECK(gw->a == kExampleA);
  CHECK(gw->b == Matrix::identity(2));

  const PreserverClassification mat_class = is_strong_matrix_majorization_preserver(t);
  const auto* rejected = std::get_if<NotPreserver>(&mat_class);
  REQUIRE(rejected != nullptr);
  CHECK(rejected->reason == RejectReason::NotPermutation);
}

TEST_CASE("degenerate operators are rejected with the matching reason") {
  const MatrixOperator zero(2, 2, Matrix::zero(4, 4));
  const PreserverClassification zero_class = is_strong_gw_preserver(zero);
  const auto* zero_rejected = std::get_if<NotPreserver>(&zero_class);
  REQUIRE(zero_rejected != nullptr);
  CHECK(zero_rejected->reason == RejectReason::OperatorSingular);

  const Rational half(1, 2);
  const Matrix uniform{{half, half}, {half, half}};  // J/2, singular and row stochastic
  const auto gw_class = is_strong_gw_preserver(MatrixOperator::from_factors(uniform, Matrix::identity(2)));
  const auto* singular_rejected = std::get_if<NotPreserver>(&gw_class);
  REQUIRE(singular_rejected != nullptr);
  CHECK(singular_rejected->reason == RejectReason::ASingular);

  const Matrix not_grs{{1, 1}, {0, 1}};
  const auto scaled = is_strong_gw_preserver(MatrixOperator::from_factors(not_grs, Matrix::identity(2)));
  const auto* not_grs_rejected = std::get_if<NotPreserver>(&scaled);
  REQUIRE(not_grs_rejected != nullptr);
  CHECK(not_grs_rejected->reason == RejectReason::ANotGRowStochastic);

  const Matrix b_singular{{1, 1}, {1, 1}};
  const auto bs = is_strong_gw_preserver(MatrixOperator::from_factors(kExampleA, b_singular));
  const auto* b_rejected = std::get_if<NotPreserver>(&bs);
  REQUIRE(b_rejected != nullptr);
  CHECK(b_rejected->reason == RejectReason::BSingular);
}

TEST_CASE("strong matrix-majorization preservers are PXL forms") {
  const Matrix p{{0, 1}, {1, 0}};
  const Matrix l{{1, 1}, {0, 1}};
  const MatrixOperator t = MatrixOperator::from_factors(p, l);
  const PreserverClassification c = is_strong_matrix_majorization_preserver(t);
  const auto* preserver = std::get_if<StrongMatrixPreserver>(&c);
  REQUIRE(preserver != nullptr);
  CHECK(preserver->p == p);
  CHECK(preserver->l == l);

  const auto id_class = is_strong_matrix_majorization_preserver(MatrixOperator::identity(2, 2));
  const auto* id_preserver = std::get_if<StrongMatrixPreserver>(&id_class);
  REQUIRE(id_preserver != nullptr);
  CHECK(id_preserver->p == Matrix::identity(2));
  CHECK(id_preserver->l == Matrix::identity(2));

  CHECK_THROWS_AS(is_strong_matrix_majorization_preserver(MatrixOperator::identity(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("every PXL operator is also a strong gw preserver") {
  Rng rng(506);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const Matrix p = random_permutation(n, rng);
    const Matrix l = random_invertible_matrix(n, rng);
    const MatrixOperator t = MatrixOperator::from_factors(p, l);
    CHECK(std::holds_alternative<StrongMatrixPreserver>(is_strong_matrix_majorization_preserver(t)));
    CHECK(std::holds_alternative<StrongGwPreserver>(is_strong_gw_preserver(t)));
  }
}

TEST_CASE("synthesis round trips exactly") {
  Rng rng(507);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const SynthesizedPreserver synth = synth_strong_gw_preserver(n, m, rng);
    CHECK(rank(synth.op.matrix()) == n * m);  // strong preservers are invertible
    const PreserverClassification c = is_strong_gw_preserver(synth.op);
    const auto* preserver = std::get_if<StrongGwPreserver>(&c);
    REQUIRE(preserver != nullptr);
    CHECK(preserver->a == synth.a);
    CHECK(preserver->b == synth.b);
  }
}

TEST_CASE("synthesis handles the scalar case and fixed seeds") {
  Rng rng(508);
  const SynthesizedPreserver scalar = synth_strong_gw_preserver(1, 1, rng);
  CHECK(scalar.a == Matrix{{1}});
  CHECK(scalar.op.matrix() == scalar.b);
  CHECK(scalar.b(0, 0) != 0);

  Rng first(99), second(99);
  const SynthesizedPreserver lhs = synth_strong_gw_preserver(3, 2, first);
  const SynthesizedPreserver rhs = synth_strong_gw_preserver(3, 2, second);
  CHECK(lhs.op.matrix() == rhs.op.matrix());
  CHECK(lhs.a == rhs.a);
  CHECK(lhs.b == rhs.b);
}

TEST_CASE("falsifier finds a matrix-majorization counterexample for the example operator") {
  const MatrixOperator t = example_operator();
  Rng rng(509);
  const auto counterexample = falsify_strong_preservation(t, Relation::Matrix, 200, rng);
  REQUIRE(counterexample.has_value());
  if (counterexample->forward) {
    CHECK(matrix_majorizes(counterexample->x, counterexample->y).holds);
    CHECK_FALSE(matrix_majorizes(t.apply(counterexample->x), t.apply(counterexample->y)).holds);
  } else {
    CHECK(matrix_majorizes(t.apply(counterexample->x), t.apply(counterexample->y)).holds);
    CHECK_FALSE(matrix_majorizes(counterexample->x, counterexample->y).holds);
  }

  // the displayed pair is itself a counterexample
  const Matrix x1{{1, 0}, {0, 0}};
  const Matrix x2{{0, 0}, {1, 0}};
  CHECK(matrix_majorizes(x1, x2).holds);
  CHECK_FALSE(matrix_majorizes(t.apply(x1), t.apply(x2)).holds);
}

TEST_CASE("falsifier finds nothing on true strong preservers") {
  const MatrixOperator t = example_operator();
  Rng rng(510);
  CHECK_FALSE(falsify_strong_preservation(t, Relation::Gw, 500, rng).has_value());
  Rng rng2(511);
  CHECK_FALSE(
      falsify_strong_preservation(MatrixOperator::identity(2, 2), Relation::Gw, 50, rng2).has_value());
  Rng rng3(512);
  CHECK_FALSE(
      falsify_strong_preservation(MatrixOperator::identity(2, 2), Relation::Matrix, 50, rng3).has_value());
}

TEST_CASE("falsifier stays silent across synthesized preservers") {
  Rng rng(515);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const std::size_t m = static_cast<std::size_t>(draw_int(rng, 1, 4));
    const SynthesizedPreserver synth = synth_strong_gw_preserver(n, m, rng);
    CHECK_FALSE(falsify_strong_preservation(synth.op, Relation::Gw, 100, rng).has_value());
  }
}

TEST_CASE("falsifier rejects unsupported arguments") {
  Rng rng(513);
  CHECK_THROWS_AS(falsify_strong_preservation(example_operator(), Relation::Gs, 10, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(falsify_strong_preservation(example_operator(), Relation::Gw, 0, rng),
                  std::invalid_argument);
}

TEST_CASE("commutant of GR_n contains only the identity") {
  CHECK(is_in_gr_commutant(Matrix::identity(3)));

  const Rational half(1, 2);
  CHECK_FALSE(is_in_gr_commutant(Matrix{{half, half}, {half, half}}));

  CHECK_THROWS_AS(is_in_gr_commutant(Matrix{{1, 1}, {0, 1}}), std::invalid_argument);

  Rng rng(514);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw_int(rng, 1, 5));
    const Matrix a = random_g_row_stochastic(n, rng).matrix();
    CHECK(is_in_gr_commutant(a) == (a == Matrix::identity(n)));
  }
}
