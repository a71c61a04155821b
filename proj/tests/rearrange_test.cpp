#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "crestimate/bounds.hpp"
#include "crestimate/random.hpp"
#include "crestimate/rearrange.hpp"

using namespace crestimate;

namespace {

PiecewiseLinearFunction triangle() { return make_linear({0, 1, 2}, {0, 1, 0}); }
StepFunction two_boxes() { return make_step({0, 1, 2, 3}, {1, 0, 1}); }

}  // namespace

TEST(Distribution, Examples) {
  EXPECT_EQ(distribution(two_boxes(), 0.5), 2.0);
  EXPECT_EQ(distribution(two_boxes(), 1.5), 0.0);
  EXPECT_EQ(distribution(two_boxes(), 1.0), 0.0);
  EXPECT_EQ(distribution(triangle(), 0.5), 1.0);
  EXPECT_EQ(distribution(triangle(), 1.0), 0.0);
}

TEST(Distribution, TriangleMatchesGridCount) {
  const double h = 1e-5;
  for (double alpha : {0.1, 0.3, 0.5, 0.9}) {
    std::size_t hits = 0;
    for (int i = 0; i < 200000; ++i) hits += triangle()((i + 0.5) * h) > alpha;
    EXPECT_NEAR(static_cast<double>(hits) * h, distribution(triangle(), alpha), 2e-5);
  }
}

TEST(Rearrangement, FixedVectors) {
  for (int n : {1, 2, 4}) EXPECT_EQ(rearrangement(comb_example(n)), box(0, 5.0 * n));
  EXPECT_EQ(rearrangement(triangle()), make_linear({0, 2}, {1, 0}));
  EXPECT_EQ(rearrangement(box(2, 3)), box(0, 1));
}

TEST(Rearrangement, StepSortsDescending) {
  const auto f = make_step({0, 1, 3, 4, 6}, {1, 3, 0, 2});
  EXPECT_EQ(rearrangement(f), make_step({0, 2, 4, 5}, {3, 2, 1}));
}

TEST(Rearrangement, LinearWithPlateau) {
  const auto f = make_linear({0, 1, 3, 4}, {0, 2, 2, 0});
  EXPECT_EQ(rearrangement(f), make_linear({0, 2, 4}, {2, 2, 0}));
}

TEST(Rearrangement, EquimeasurableAndNormPreserving) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = Rng::stream(21, t);
    const auto f = random_dyadic_step(rng);
    const auto star = rearrangement(f);
    EXPECT_EQ(total_integral(star), total_integral(f));
    EXPECT_EQ(star.support_begin(), 0.0);
    EXPECT_TRUE(std::is_sorted(star.values().begin(), star.values().end(), std::greater<>()));
    for (int k = 0; k < 20; ++k) {
      const double alpha = static_cast<double>(rng.integer(1, 40)) / 10.0;
      EXPECT_EQ(distribution(f, alpha), distribution(star, alpha));
    }
  }
}

TEST(Rearrangement, LinearEquimeasurable) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = Rng::stream(22, t);
    const auto n = rng.integer(2, 10);
    std::vector<double> xs{0.0};
    std::vector<double> ys{0.0};
    for (std::int64_t i = 0; i < n; ++i) {
      xs.push_back(xs.back() + rng.uniform(0.1, 2.0));
      ys.push_back(rng.chance(0.2) ? 0.0 : rng.uniform(0.0, 3.0));
    }
    xs.push_back(xs.back() + 1.0);
    ys.push_back(0.0);
    const auto f = make_linear(xs, ys);
    if (f.nodes().empty()) continue;
    const auto star = rearrangement(f);
    EXPECT_NEAR(integrate(star, 0, 1e3), integrate(f, -1e3, 1e3), 1e-12 * (1 + integrate(f, -1e3, 1e3)));
    for (int k = 0; k < 10; ++k) {
      const double alpha = rng.uniform(0.01, 3.0);
      EXPECT_NEAR(distribution(f, alpha), distribution(star, alpha), 1e-12 * (1 + xs.back()));
    }
  }
}

TEST(RearrangementIntegral, Examples) {
  for (int n : {1, 2}) {
    for (double z : {1.0, 3.0, 101 * std::numbers::pi}) {
      EXPECT_DOUBLE_EQ(rearrangement_integral(comb_example(n), 1.0 / z), 1.0 / z);
    }
  }
  const auto f = make_step({0, 1, 3}, {2, 1});
  EXPECT_EQ(rearrangement_integral(f, 10.0), total_integral(f));
  EXPECT_EQ(rearrangement_integral(triangle(), 1.0), 0.75);
}

TEST(RearrangementIntegral, HardyLittlewoodSetBound) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = Rng::stream(23, t);
    const auto f = random_dyadic_step(rng);
    // E is a union of up to three dyadic intervals.
    std::vector<double> ends;
    for (int k = 0; k < 6; ++k) ends.push_back(static_cast<double>(rng.integer(-160, 160)) / 16.0);
    std::sort(ends.begin(), ends.end());
    double on_e = 0.0;
    double measure = 0.0;
    for (std::size_t k = 0; k + 1 < ends.size(); k += 2) {
      on_e += integrate(f, ends[k], ends[k + 1]);
      measure += ends[k + 1] - ends[k];
    }
    EXPECT_LE(on_e, rearrangement_integral(f, measure));
  }
}

TEST(LorentzNorm, Examples) {
  EXPECT_EQ(lorentz_lambda_norm(box(0, 1), box(0, 10), 2.0), 1.0);
  EXPECT_NEAR(lorentz_lambda_norm(triangle(), box(1, 10), 1.0), 0.25, 1e-12);
  EXPECT_EQ(lorentz_lambda_norm(comb_example(1), box(0, 5), 1.0), 5.0);
}

TEST(LorentzNorm, StrictlyBelowPlainNormForTriangle) {
  const auto u = box(1, 10);
  for (double p : {1.0, 2.0, 3.0}) {
    const double lambda = lorentz_lambda_norm(triangle(), u, p);
    const double plain = weighted_lp_norm(triangle(), u, p);
    EXPECT_GT(plain - lambda, 1e-6) << "p = " << p;
  }
  // p = 1: 1/4 against 1/2.
  EXPECT_NEAR(weighted_lp_norm(triangle(), u, 1.0), 0.5, 1e-12);
}

TEST(LorentzNorm, WeightValidation) {
  EXPECT_THROW(lorentz_lambda_norm(box(0, 1), box(-1, 1), 1.0), ValidationError);
  EXPECT_THROW(lorentz_lambda_norm(box(0, 1), box(0, 1), 0.0), ValidationError);
}
