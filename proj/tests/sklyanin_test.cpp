#include "thetaring/sklyanin.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace thetaring {
namespace {

const PeriodMatrix kGeneric{{0.0, 1.2}, {0.0, 0.9}, {0.0, 0.2}};

RingFamily shear3(const PeriodMatrix& p, double b1, double b2) {
  return RingFamily{RingKind::TorusShear3, p, b1, b2, {}};
}

TEST(ThetaConstantsTest, ReflectionSymmetryForIntegerShift) {
  for (const auto& [b1, b2] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.0}, std::pair{0.0, -1.0}}) {
    const ThetaConstants tc = theta_constants(kGeneric, b1, b2);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        EXPECT_LE(std::abs(tc.at(a, b) - tc.at(6 - a, 6 - b)), 1e-13) << a << b << " b=" << b1 << "," << b2;
  }
}

TEST(ThetaConstantsTest, GenericShiftBreaksSymmetry) {
  const ThetaConstants tc = theta_constants(kGeneric, 0.37, 0.21);
  EXPECT_GT(std::abs(tc.at(2, 0) - tc.at(4, 0)), 1e-3);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const Complex expected = testing::to_double(testing::theta_direct(kGeneric, a, b, 0.37L, 0.21L, 1, 3));
      EXPECT_LE(std::abs(tc.at(a, b) - expected), 1e-13);
    }
  EXPECT_EQ(tc.at(-1, 7), tc.at(5, 1));
}

TEST(CommutatorVectorTest, IndexReduction) {
  const auto minus = commutator_vector(0, 0);
  const FreeQuadratic expected = FreeQuadratic::monomial(2, 0, 1, 0) - FreeQuadratic::monomial(1, 0, 2, 0);
  EXPECT_EQ(minus[0].terms(), expected.terms());
  EXPECT_EQ(minus[0].coeff({2, 0, 1, 0}), Complex{1.0});
  EXPECT_EQ(minus[0].coeff({1, 0, 2, 0}), Complex{-1.0});

  const auto plus = anticommutator_vector(0, 0);
  EXPECT_EQ(plus[4].terms(), FreeQuadratic::monomial(0, 0, 0, 0).terms());
  EXPECT_EQ(plus[4].coeff({0, 0, 0, 0}), Complex{1.0});
}

TEST(CommutatorVectorTest, SwapSymmetry) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto minus = commutator_vector(i, j);
      const auto plus = anticommutator_vector(i, j);
      for (int r = 0; r < 4; ++r) {
        EXPECT_EQ(minus[r].swapped().terms(), (-1.0 * minus[r]).terms());
        EXPECT_EQ(plus[r].swapped().terms(), plus[r].terms());
        EXPECT_EQ(minus[r].terms().size(), 2u);
      }
      EXPECT_EQ(plus[4].swapped().terms(), plus[4].terms());
    }
}

TEST(DeformationVectorsTest, MatchTabulatedEntries) {
  const ThetaConstants tc = theta_constants(kGeneric, 0.37, 0.21);
  const auto A = [&](int a, int b) { return tc.at(a, b); };
  const DeformationVectors v = deformation_vectors(tc);
  // (first, second) index pairs of each entry; plus is first + second, minus first - second.
  const int table[4][4][4] = {
      {{2, 0, 4, 0}, {5, 0, 1, 0}, {2, 3, 4, 3}, {5, 3, 1, 3}},
      {{0, 2, 0, 4}, {3, 2, 3, 4}, {0, 5, 0, 1}, {3, 5, 3, 1}},
      {{2, 2, 4, 4}, {5, 2, 1, 4}, {2, 5, 4, 1}, {5, 5, 1, 1}},
      {{2, 4, 4, 2}, {5, 4, 1, 2}, {2, 1, 4, 5}, {5, 1, 1, 5}},
  };
  for (int r = 0; r < 4; ++r)
    for (int e = 0; e < 4; ++e) {
      const auto& t = table[r][e];
      EXPECT_EQ(v.plus[r](e), A(t[0], t[1]) + A(t[2], t[3])) << r << e;
      EXPECT_EQ(v.minus[r](e), A(t[0], t[1]) - A(t[2], t[3])) << r << e;
    }
  EXPECT_EQ(v.v5(0), A(0, 0));
  EXPECT_EQ(v.v5(1), A(3, 0));
  EXPECT_EQ(v.v5(2), A(0, 3));
  EXPECT_EQ(v.v5(3), A(3, 3));
}

TEST(DeformationVectorsTest, AgreeWithRingProducts) {
  const double b1 = 0.37, b2 = 0.21;
  const DeformationVectors v = deformation_vectors(theta_constants(kGeneric, b1, b2));
  const DegreeTwoEvaluator ring(shear3(kGeneric, b1, b2));
  const auto minus = commutator_vector(0, 0);
  const auto plus = anticommutator_vector(0, 0);
  const std::array<std::array<int, 2>, 4> block{{{0, 0}, {3, 0}, {0, 3}, {3, 3}}};
  for (int r = 0; r < 4; ++r) {
    const RingElement m = ring.evaluate(minus[r]);
    const RingElement p = ring.evaluate(plus[r]);
    for (int e = 0; e < 4; ++e) {
      EXPECT_LE(std::abs(m.coeff(block[e][0], block[e][1]) - v.minus[r](e)), 1e-13) << r << e;
      EXPECT_LE(std::abs(p.coeff(block[e][0], block[e][1]) - v.plus[r](e)), 1e-13) << r << e;
    }
  }
  const RingElement sq = ring.evaluate(plus[4]);
  for (int e = 0; e < 4; ++e) EXPECT_LE(std::abs(sq.coeff(block[e][0], block[e][1]) - v.v5(e)), 1e-13);
}

TEST(DeformationMatrixTest, VanishesForIntegerShift) {
  for (const auto& [b1, b2] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.0}, std::pair{1.0, -2.0}}) {
    const DeformationMatrix dm = build_deformation_matrix(theta_constants(kGeneric, b1, b2));
    EXPECT_LE(inf_norm(dm.M), 1e-10);
    for (const auto& row : dm.log) EXPECT_TRUE(row.trivial);
  }
}

TEST(DeformationMatrixTest, DiagonalZerosAndNonzeroRows) {
  const DeformationMatrix dm = build_deformation_matrix(theta_constants(kGeneric, 0.37, 0.21));
  for (int r = 0; r < 4; ++r) {
    EXPECT_EQ(dm.M(r, r), Complex{});
    EXPECT_GT(dm.M.row(r).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_FALSE(dm.log[r].trivial);
    EXPECT_GT(dm.log[r].rcond, 0.0);
  }
}

TEST(DeformationMatrixTest, SolvesItsColumnSystems) {
  const DeformationMatrix dm = build_deformation_matrix(theta_constants(kGeneric, 0.37, 0.21));
  const auto& v = dm.vectors;
  for (int r = 0; r < 4; ++r) {
    Vector4 lhs = Vector4::Zero();
    for (int c = 0; c < 5; ++c) lhs += dm.M(r, c) * (c < 4 ? v.plus[c] : v.v5);
    EXPECT_LE((lhs + v.minus[r]).cwiseAbs().maxCoeff(), 1e-10 * v.minus[r].cwiseAbs().maxCoeff());
  }
}

TEST(EvaluateInRingTest, CommutatorVanishesForIntegerShift) {
  const RingFamily family = shear3(kGeneric, 0.0, 0.0);
  for (const auto& q : commutator_vector(1, 2)) {
    const RingElement x = evaluate_in_ring(q, family);
    EXPECT_LE(x.sup_norm(), 1e-13);
  }
}

TEST(EvaluateInRingTest, AnticommutatorCarriesPlusEntries) {
  const double b1 = 0.37, b2 = 0.21;
  const ThetaConstants tc = theta_constants(kGeneric, b1, b2);
  // Z00 Z10 + Z10 Z00 = Z_{p-d} Z_{p+d} + ... with p = (2, 0), d = (1, 0).
  const FreeQuadratic q = FreeQuadratic::monomial(0, 0, 1, 0) + FreeQuadratic::monomial(1, 0, 0, 0);
  EXPECT_EQ(q.terms(), anticommutator_vector(2, 0)[0].terms());
  const RingElement x = evaluate_in_ring(q, shear3(kGeneric, b1, b2));
  // Same block entries as v1^+, shifted by 2p = (4, 0).
  EXPECT_LE(std::abs(x.coeff(4, 0) - (tc.at(2, 0) + tc.at(4, 0))), 1e-13);
  EXPECT_LE(std::abs(x.coeff(1, 0) - (tc.at(5, 0) + tc.at(1, 0))), 1e-13);
}

TEST(EvaluateInRingTest, RejectsWrongFamily) {
  const RingFamily kummer{RingKind::Kummer, kGeneric, 0.0, 0.0, {}};
  EXPECT_THROW(evaluate_in_ring(FreeQuadratic::monomial(0, 0, 0, 0), kummer), UsageError);
}

TEST(GenerateAndVerifyTest, ReferenceSample) {
  const RelationSet set = generate_and_verify(kGeneric, 0.37, 0.21);
  ASSERT_EQ(set.relations.size(), 36u);
  EXPECT_LE(set.max_residual(), 1e-9);
  for (std::size_t n = 0; n < 36; ++n) {
    const auto& r = set.relations[n];
    EXPECT_EQ(r.i, static_cast<int>(n / 12));
    EXPECT_EQ(r.j, static_cast<int>(n / 4 % 3));
    EXPECT_EQ(r.row, static_cast<int>(n % 4) + 1);
    EXPECT_EQ(r.expression.terms(), relation_expression(set.deformation.M, r.i, r.j, r.row).terms());
  }
  // With Z_{p-d} first, every nontrivial row is accepted with the negated sign.
  for (const auto& row : set.deformation.log) EXPECT_EQ(row.sign, -1);
  EXPECT_EQ(relation_rank(set.relations), 36);
}

TEST(GenerateAndVerifyTest, RandomSamples) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> b(0.05, 0.95);
  for (int trial = 0; trial < 5; ++trial) {
    const PeriodMatrix p = testing::random_period(rng);
    const double b1 = b(rng), b2 = b(rng);
    const RelationSet set = generate_and_verify(p, b1, b2);
    EXPECT_LE(set.max_residual(), 1e-9) << "trial " << trial;
    EXPECT_EQ(relation_rank(set.relations), 36);
  }
}

TEST(GenerateAndVerifyTest, IntegerShiftGivesCommutators) {
  const RelationSet set = generate_and_verify(kGeneric, 1.0, 0.0);
  EXPECT_LE(set.max_residual(), 1e-12);
  EXPECT_LE(inf_norm(set.deformation.M), 1e-10);
  for (const auto& r : set.relations)
    EXPECT_EQ(r.expression.terms(), commutator_vector(r.i, r.j)[r.row - 1].terms());
}

TEST(GenerateAndVerifyTest, QuasiPeriodicInB) {
  const RelationSet shifted = generate_and_verify(kGeneric, 1.37, 0.21);
  EXPECT_LE(shifted.max_residual(), 1e-9);
  const ThetaConstants a = theta_constants(kGeneric, 0.37, 0.21);
  // Shifting b1 by one moves the first index by three.
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_LE(std::abs(shifted.constants.at(i, j) - a.at(i + 3, j)), 1e-13);
}

TEST(GenerateAndVerifyTest, RejectsInvalidPeriod) {
  EXPECT_THROW(generate_and_verify(PeriodMatrix{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, 0.3, 0.3), DomainError);
}

TEST(RelationRankTest, CountsIndependentRows) {
  std::vector<Relation> rels;
  rels.push_back({0, 0, 1, FreeQuadratic::monomial(0, 0, 1, 1), 0.0});
  rels.push_back({0, 0, 2, 2.0 * FreeQuadratic::monomial(0, 0, 1, 1), 0.0});
  rels.push_back({0, 0, 3, FreeQuadratic::monomial(1, 1, 0, 0), 0.0});
  EXPECT_EQ(relation_rank(rels), 2);
  EXPECT_EQ(generator_name(1, 2), "Z12");
}

} // namespace
} // namespace thetaring
