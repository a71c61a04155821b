#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "crestimate/hardy.hpp"
#include "crestimate/random.hpp"

using namespace crestimate;

namespace {

// From the mpmath reference script (40 digits, 1e-10 quadrature or better).
constexpr double kBoxFourierNorm = 0.98629141356429006716;
constexpr double kStarFourierNorm = 0.96446569710360100538;
constexpr double kStarHardyMiddle = 0.94648472430004560182;
constexpr double kLn2 = 0.69314718055994530942;

PiecewiseLinearFunction g_star() { return make_linear({0, 2}, {1, 0}); }

constexpr double kQs[] = {0.5, 1.0, 2.0, 3.0};

}  // namespace

TEST(HardyOperator, Examples) {
  EXPECT_EQ(hardy_operator(box(0, 1), 0.5), 0.5);
  EXPECT_EQ(hardy_operator(box(0, 1), 7.0), 1.0);
  EXPECT_EQ(hardy_operator(make_step({0, 1, 2}, {2, 1}), 1.5), 2.5);
  EXPECT_THROW(hardy_operator(box(0, 1), 0.0), ValidationError);
  EXPECT_THROW(hardy_operator(box(-1, 1), 1.0), ValidationError);
}

TEST(HardyLhs, Examples) {
  EXPECT_NEAR(hardy_lhs(box(0, 1), box(0, 1), 2.0).value, 1.0, 1e-12);
  EXPECT_NEAR(hardy_lhs(box(0, 1), box(1, 2), 1.0).value, kLn2, 1e-8 * kLn2);
  EXPECT_NEAR(hardy_lhs_direct(box(0, 1), box(0, 1), 2.0).value, 1.0, 1e-12);
  EXPECT_NEAR(hardy_lhs_direct(box(0, 1), box(1, 2), 1.0).value, kLn2, 1e-8 * kLn2);
}

TEST(HardyLhs, Rejections) {
  EXPECT_THROW(hardy_lhs(make_step({0, 1}, {0}), box(0, 1), 2.0), ValidationError);
  EXPECT_THROW(hardy_lhs(make_step({0, 1, 2}, {1, 2}), box(0, 1), 2.0), ValidationError);
  EXPECT_THROW(hardy_lhs(box(0, 1), box(0, 1), 0.0), ValidationError);
  EXPECT_THROW(hardy_lhs(box(0, 1), box(0, 1), 0.5), ValidationError);
  EXPECT_NO_THROW(hardy_lhs(box(0, 1), box(1e-6, 1), 0.5));
}

TEST(HardyLhs, SubstitutionIdentity) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(61, t);
    const auto f = random_decreasing_step(rng);
    const double q = kQs[rng.integer(0, 3)];
    const auto u = random_weight(rng, q < 1.0 ? 1e-3 : 0.0, 10.0);
    const double substituted = hardy_lhs(f, u, q).value;
    const double direct = hardy_lhs_direct(f, u, q).value;
    EXPECT_NEAR(direct, substituted, 1e-6 * substituted) << "trial " << t << " q " << q;
  }
}

TEST(FourierNorm, Examples) {
  EXPECT_NEAR(fourier_weighted_norm(box(0, 1), box(0, 1), 2.0).value, kBoxFourierNorm, 1e-8);
  EXPECT_THROW(fourier_weighted_norm(box(0, 1), box(0, 1), -1.0), ValidationError);
}

TEST(FourierNorm, Localizes) {
  const double eps = 1e-4;
  for (double a : {0.5, 3.0, 20.0}) {
    for (double q : {1.0, 2.0}) {
      const double norm = fourier_weighted_norm(box(0, 1), box(a, a + eps), q).value;
      const double expected = std::abs(fourier(box(0, 1), a)) * std::pow(eps, 1.0 / q);
      EXPECT_NEAR(norm, expected, 0.01 * expected);
    }
  }
}

TEST(HardyChain, BoxInstance) {
  const auto r = check_corollary2(box(0, 1), box(0, 1), box(0, 1), 2.0, 2.0);
  EXPECT_NEAR(r.fourier_weighted_norm, kBoxFourierNorm, 1e-6);
  EXPECT_NEAR(r.hardy_middle, 1.0, 1e-6);
  EXPECT_EQ(r.chain_constant, std::numbers::pi * std::sqrt(10.0) / 2.0);
  EXPECT_NEAR(r.lambda_rhs, 1.0, 1e-15);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_NEAR(r.hardy_ratio, 1.0, 1e-6);
  EXPECT_NEAR(r.implied_fourier_constant, r.chain_constant, 1e-5);
}

TEST(HardyChain, RearrangedTriangle) {
  const auto r = check_corollary2(g_star(), box(0, 1), box(0, 2), 2.0, 2.0);
  EXPECT_NEAR(r.fourier_weighted_norm, kStarFourierNorm, 1e-6);
  EXPECT_NEAR(r.hardy_middle, kStarHardyMiddle, 1e-6);
  EXPECT_NEAR(r.lambda_rhs, std::sqrt(2.0 / 3.0), 1e-9);
  EXPECT_TRUE(r.chain_holds);
}

TEST(HardyChain, Homogeneity) {
  const auto f = make_step({0, 1, 2.5}, {3, 1});
  const auto u = make_step({0.5, 2, 4}, {1, 2});
  const auto v = box(0, 3);
  for (double q : kQs) {
    const auto base = check_corollary2(f, u, v, 2.0, q);
    const auto scaled = check_corollary2(scale(f, 4.0), u, v, 2.0, q);
    EXPECT_NEAR(scaled.fourier_weighted_norm, 4.0 * base.fourier_weighted_norm, 1e-7 * scaled.fourier_weighted_norm);
    EXPECT_NEAR(scaled.hardy_middle, 4.0 * base.hardy_middle, 1e-7 * scaled.hardy_middle);
    EXPECT_NEAR(scaled.lambda_rhs, 4.0 * base.lambda_rhs, 1e-12 * scaled.lambda_rhs);
    EXPECT_EQ(scaled.chain_holds, base.chain_holds);
  }
}

TEST(HardyChain, ChainOnRandomDecreasing) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(62, t);
    const auto f = random_decreasing_step(rng);
    const double p = kQs[rng.integer(0, 3)];
    const double q = kQs[rng.integer(0, 3)];
    const auto u = random_weight(rng, q < 1.0 ? 1e-3 : 0.0, 10.0);
    const auto v = random_weight(rng, 0.0, 10.0);
    const auto r = check_corollary2(f, u, v, p, q);
    EXPECT_TRUE(r.chain_holds) << "trial " << t;
    EXPECT_LE(r.fourier_weighted_norm, r.chain_constant * r.hardy_middle * (1 + 1e-6));
  }
}
