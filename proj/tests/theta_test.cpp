#include "thetaring/theta.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace thetaring {
namespace {

using testing::random_period;
using testing::theta_direct;
using testing::to_double;

const PeriodMatrix kSquare{{0.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};

// One-variable Gaussian sum sum_m exp(-4 pi m^2) in long double.
long double gaussian_sum(long double c) {
  long double s = 0.0L;
  for (int m = -40; m <= 40; ++m) s += std::exp(-c * m * m);
  return s;
}

TEST(ThetaTest, FactorizesForDiagonalPeriod) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double one_dim = gaussian_sum(4.0L * pi);
  const Complex value = theta_general(kSquare, ThetaArgs{0, 0, 0.0, 0.0, 1, 2});
  EXPECT_NEAR(value.real(), static_cast<double>(one_dim * one_dim), 1e-14);
  EXPECT_NEAR(value.imag(), 0.0, 1e-14);
  // 1 + 4 exp(-4 pi) up to O(exp(-8 pi)).
  EXPECT_NEAR(value.real(), 1.0 + 4.0 * std::exp(-4.0 * std::numbers::pi), 1e-10);
}

TEST(ThetaTest, SquarePeriodMatchesDirectSum) {
  const Complex expected = to_double(theta_direct(kSquare, 0, 0, 0, 0, 1, 2, 20));
  const Complex value = theta_general(kSquare, ThetaArgs{0, 0, 0.0, 0.0, 1, 2});
  EXPECT_LE(std::abs(value - expected), 1e-14);
}

TEST(ThetaTest, FactorizationPropertyWithTau3Zero) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> idx(-12, 12);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    PeriodMatrix p = random_period(rng);
    p.tau3 = 0.0;
    const int s = 2 + trial % 2;
    const int l = 1 + trial % 3;
    const ThetaArgs args{idx(rng), idx(rng), s == 3 ? frac(rng) : 0.0, s == 3 ? frac(rng) : 0.0, l, s};
    // theta(tau1, tau2, 0) = theta_1(tau1) * theta_1(tau2), each a one-variable
    // sum obtained by pairing with a huge second diagonal entry.
    const PeriodMatrix first{p.tau1, {0.0, 50.0}, 0.0};
    const PeriodMatrix second{{0.0, 50.0}, p.tau2, 0.0};
    const ThetaArgs only_first{args.a1, 0, args.b1, 0.0, l, s};
    const ThetaArgs only_second{0, args.a2, 0.0, args.b2, l, s};
    const Complex product = theta_general(first, only_first) * theta_general(second, only_second);
    EXPECT_LE(std::abs(theta_general(p, args) - product), 2e-14) << "trial " << trial;
  }
}

TEST(ThetaTest, AgreesWithExtendedPrecisionDirectSum) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> idx(-30, 30);
  std::uniform_real_distribution<double> frac(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const PeriodMatrix p = random_period(rng);
    const int s = 2 + trial % 2;
    const int l = 1 + trial % 4;
    const ThetaArgs args{idx(rng), idx(rng), frac(rng), frac(rng), l, s};
    const Complex expected = to_double(theta_direct(p, args.a1, args.a2, args.b1, args.b2, l, s));
    EXPECT_LE(std::abs(theta_general(p, args) - expected), 1e-12) << "trial " << trial;
  }
}

TEST(ThetaTest, SymmetryOfShearThreeConstants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const PeriodMatrix p = random_period(rng);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const Complex x = theta_general(p, ThetaArgs{a, b, 0.0, 0.0, 1, 3});
        const Complex y = theta_general(p, ThetaArgs{6 - a, 6 - b, 0.0, 0.0, 1, 3});
        EXPECT_LE(std::abs(x - y), 1e-12);
      }
  }
}

TEST(ThetaTest, LatticePeriodicity) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> idx(-20, 20);
  std::uniform_int_distribution<int> shift(-3, 3);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PeriodMatrix p = random_period(rng);
    const int s = 1 + trial % 3;
    const int l = 1 + trial % 4;
    const long long period = 2LL * s * l;
    const ThetaArgs args{idx(rng), idx(rng), frac(rng), frac(rng), l, s};
    ThetaArgs moved = args;
    moved.a1 += period * shift(rng);
    moved.a2 += period * shift(rng);
    EXPECT_LE(std::abs(theta_general(p, args) - theta_general(p, moved)), 2e-14);
  }
}

// theta(a, 1) theta(a', 1) = sum over e, f in {0, 4} of
// theta(a' + a + (e, f), 2) theta(a' - a + (e, f), 2) at shear 2.
TEST(ThetaTest, AdditionFormula) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> idx(-8, 8);
  for (int period_trial = 0; period_trial < 5; ++period_trial) {
    const PeriodMatrix p = random_period(rng);
    const auto t = [&](long long a, long long b, int l) {
      return theta_general(p, ThetaArgs{a, b, 0.0, 0.0, l, 2});
    };
    for (int pair = 0; pair < 50; ++pair) {
      const int a1 = idx(rng), a2 = idx(rng), c1 = idx(rng), c2 = idx(rng);
      const Complex lhs = t(a1, a2, 1) * t(c1, c2, 1);
      Complex rhs = 0.0;
      for (int e : {0, 4})
        for (int f : {0, 4}) rhs += t(c1 + a1 + e, c2 + a2 + f, 2) * t(c1 - a1 + e, c2 - a2 + f, 2);
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(lhs));
    }
  }
}

TEST(TruncationRadiusTest, SquarePeriodNeedsFewShells) {
  const ThetaArgs args{0, 0, 0.0, 0.0, 1, 2};
  const int r = truncation_radius(kSquare, args, Tolerance{1e-14});
  EXPECT_LE(r, 4);

  // Tail outside the box, summed directly.
  const long double pi = std::numbers::pi_v<long double>;
  long double tail = 0.0L;
  for (int m = -40; m <= 40; ++m)
    for (int n = -40; n <= 40; ++n)
      if (std::abs(m) > r || std::abs(n) > r) tail += std::exp(-4.0L * pi * (m * m + n * n));
  EXPECT_LE(static_cast<double>(tail), 1e-14);
}

TEST(TruncationRadiusTest, LooseToleranceAllowsSingleTerm) {
  EXPECT_EQ(truncation_radius(kSquare, ThetaArgs{0, 0, 0.0, 0.0, 1, 2}, Tolerance{1.0}), 0);
}

TEST(TruncationRadiusTest, GrowsAsImaginaryPartShrinks) {
  const PeriodMatrix thin{{0.0, 0.01}, {0.0, 0.01}, {0.0, 0.0}};
  const ThetaArgs args{0, 0, 0.0, 0.0, 1, 2};
  const int wide = truncation_radius(thin, args, Tolerance{1e-14});
  const int narrow = truncation_radius(kSquare, args, Tolerance{1e-14});
  EXPECT_GT(wide, narrow);

  // 1e-14 is below the rounding floor of a sum this large.
  EXPECT_THROW(theta_general(thin, args, Tolerance{1e-14}), PrecisionError);
  const Complex expected = to_double(theta_direct(thin, 0, 0, 0, 0, 1, 2, 3 * wide));
  EXPECT_LE(std::abs(theta_general(thin, args, Tolerance{1e-11}) - expected), 1e-11);
}

TEST(ThetaErrorsTest, RejectsIndefinitePeriod) {
  const PeriodMatrix bad{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.5}};
  EXPECT_THROW(theta_general(bad, ThetaArgs{}), DomainError);
  EXPECT_THROW(truncation_radius(bad, ThetaArgs{}), DomainError);
  EXPECT_THROW(theta_general(PeriodMatrix{{0.0, -1.0}, {0.0, 1.0}, 0.0}, ThetaArgs{}), DomainError);
}

TEST(ThetaErrorsTest, RejectsUnreachableTolerance) {
  EXPECT_THROW(theta_general(kSquare, ThetaArgs{}, Tolerance{1e-20}), PrecisionError);
  const PeriodMatrix tiny{{0.0, 1e-9}, {0.0, 1e-9}, 0.0};
  EXPECT_THROW(theta_general(tiny, ThetaArgs{}, Tolerance{1e-14}), PrecisionError);
}

TEST(ThetaErrorsTest, RejectsBadArguments) {
  EXPECT_THROW(theta_general(kSquare, ThetaArgs{0, 0, 0.0, 0.0, 0, 2}), UsageError);
  EXPECT_THROW(theta_general(kSquare, ThetaArgs{0, 0, 0.0, 0.0, 1, 0}), UsageError);
  EXPECT_THROW(theta_general(kSquare, ThetaArgs{}, Tolerance{0.0}), UsageError);
}

} // namespace
} // namespace thetaring
