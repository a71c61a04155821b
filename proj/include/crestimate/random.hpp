#pragma once

// Seeded random function families for the property suites.
//
// Streams: trial i of a run seeded with s draws from
//   std::mt19937_64(splitmix64(s ^ splitmix64(i + 1)))
// so a single trial can be replayed from (seed, index) alone. Uniform variates
// are built from raw engine output rather than <random> distributions, whose
// algorithms are implementation-defined; this keeps runs identical across
// standard libraries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "crestimate/piecewise.hpp"

namespace crestimate {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed ^ splitmix64(index + 1));
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  bool chance(double p) { return uniform() < p; }

  double log_uniform(double lo, double hi) { return lo * std::pow(hi / lo, uniform()); }

 private:
  std::mt19937_64 engine_;
};

/// General step function: 1-20 pieces, widths in [0.05, 2], start in [-5, 5],
/// about one value in five is a zero gap. Never identically zero.
inline StepFunction random_step(Rng& rng, int max_pieces = 20) {
  for (;;) {
    const auto n = static_cast<std::size_t>(rng.integer(1, max_pieces));
    std::vector<double> xs{rng.uniform(-5.0, 5.0)};
    std::vector<double> vs;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(xs.back() + rng.uniform(0.05, 2.0));
      vs.push_back(rng.chance(0.2) ? 0.0 : rng.uniform(0.1, 5.0));
    }
    auto f = make_step(std::move(xs), std::move(vs));
    if (!f.is_zero()) return f;
  }
}

/// Step function on a dyadic lattice: breakpoints are multiples of 1/16 in
/// [-8, 8], values multiples of 1/8 in [0, 4] with ties and zeros. Every
/// width, product and sum formed from it is exact in double precision.
inline StepFunction random_dyadic_step(Rng& rng, int max_pieces = 12) {
  for (;;) {
    const auto n = rng.integer(1, max_pieces);
    std::int64_t cursor = rng.integer(-128, 0);
    std::vector<double> xs{static_cast<double>(cursor) / 16.0};
    std::vector<double> vs;
    for (std::int64_t i = 0; i < n; ++i) {
      cursor += rng.integer(1, 16);
      xs.push_back(static_cast<double>(cursor) / 16.0);
      vs.push_back(rng.chance(0.25) ? 0.0 : static_cast<double>(rng.integer(1, 32)) / 8.0);
    }
    auto f = make_step(std::move(xs), std::move(vs));
    if (!f.is_zero()) return f;
  }
}

/// Small-integer step function for crest counting: at most `max_pieces` unit
/// pieces with values in {0, 1, 2, 3}, so ties, plateaus and zero gaps are common.
inline StepFunction random_small_step(Rng& rng, int max_pieces = 8) {
  for (;;) {
    const auto n = rng.integer(1, max_pieces);
    std::vector<double> xs{0.0};
    std::vector<double> vs;
    for (std::int64_t i = 0; i < n; ++i) {
      xs.push_back(xs.back() + static_cast<double>(rng.integer(1, 3)));
      vs.push_back(static_cast<double>(rng.integer(0, 3)));
    }
    auto f = make_step(std::move(xs), std::move(vs));
    if (!f.is_zero()) return f;
  }
}

/// Nonincreasing step function starting at 0 with 1-20 pieces.
inline StepFunction random_decreasing_step(Rng& rng, int max_pieces = 20) {
  const auto n = rng.integer(1, max_pieces);
  std::vector<double> xs{0.0};
  std::vector<double> vs;
  double level = rng.uniform(0.5, 5.0);
  for (std::int64_t i = 0; i < n; ++i) {
    xs.push_back(xs.back() + rng.uniform(0.05, 2.0));
    vs.push_back(level);
    level *= rng.chance(0.2) ? 1.0 : rng.uniform(0.1, 0.95);
  }
  return make_step(std::move(xs), std::move(vs));
}

/// One-crest step function: a nondecreasing run followed by a nonincreasing
/// run, placed anywhere in [-5, 5].
inline StepFunction random_one_crest_step(Rng& rng, int max_run = 10) {
  const auto up = rng.integer(0, max_run);
  const auto down = rng.integer(1, max_run);
  const double peak = rng.uniform(0.5, 5.0);
  std::vector<double> rising;
  double level = peak;
  for (std::int64_t i = 0; i < up; ++i) {
    level *= rng.chance(0.2) ? 1.0 : rng.uniform(0.1, 0.95);
    rising.push_back(level);
  }
  std::vector<double> vs(rising.rbegin(), rising.rend());
  level = peak;
  for (std::int64_t i = 0; i < down; ++i) {
    vs.push_back(level);
    level *= rng.chance(0.2) ? 1.0 : rng.uniform(0.1, 0.95);
  }
  std::vector<double> xs{rng.uniform(-5.0, 5.0)};
  for (std::size_t i = 0; i < vs.size(); ++i) xs.push_back(xs.back() + rng.uniform(0.05, 2.0));
  return make_step(std::move(xs), std::move(vs));
}

/// Weight on [0, inf): 1-4 positive pieces starting at or after `min_start`,
/// inside [min_start, max_end].
inline StepFunction random_weight(Rng& rng, double min_start, double max_end) {
  const auto n = rng.integer(1, 4);
  std::vector<double> cuts;
  for (std::int64_t i = 0; i <= n; ++i) cuts.push_back(rng.uniform(min_start, max_end));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.size() < 2) cuts = {min_start, max_end};
  std::vector<double> vs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) vs.push_back(rng.uniform(0.1, 3.0));
  return make_step(std::move(cuts), std::move(vs));
}

}  // namespace crestimate
