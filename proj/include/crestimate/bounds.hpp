#pragma once

// Pointwise transform bounds in terms of crest counts.
//
//   |fhat(z)| <= N pi sqrt(10) * integral_0^{1/z} f*        (N = #crests(f), z > 0)
//
// and the ratio Q(z) = |fhat(z)| / (pi sqrt(10) integral_0^{1/z} f*), which
// certifies #crests(f) > N wherever Q(z) > N.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "crestimate/crests.hpp"
#include "crestimate/errors.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/rearrange.hpp"
#include "crestimate/transform.hpp"

namespace crestimate {

/// pi * sqrt(10), the per-crest constant.
inline double crest_constant() { return std::numbers::pi * std::sqrt(10.0); }

/// (pi / 2) * sqrt(10), the constant for a single decreasing or one-crest function.
inline double lemma_constant() { return 0.5 * crest_constant(); }

/// Margin by which Q must exceed an integer N before N + 1 crests are certified.
inline constexpr double kThresholdGuard = 1e-9;

struct QReport {
  double z = 0.0;
  double transform_magnitude = 0.0;  // |fhat(z)|
  double tail_integral = 0.0;        // integral_0^{1/z} f*
  double theorem1_bound = 0.0;       // N pi sqrt(10) tail_integral
  double q_value = 0.0;
  std::size_t crest_count = 0;
};

struct BoundCertificate {
  double best_z = 0.0;
  double best_q = 0.0;
  std::size_t crest_count = 0;         // exact count, for comparison
  std::size_t crest_lower_bound = 1;   // certified by Q alone
  std::size_t root_lower_bound = 0;    // 2M - 1 for the largest integer M < best_q
  std::size_t derived_root_bound = 1;  // 2 * crest_lower_bound - 1
  std::vector<QReport> grid;           // sorted by z

  /// Whether Q exceeded 1, i.e. certified more than the trivial single crest.
  bool nontrivial() const { return crest_lower_bound > 1; }
};

/// f with its rearrangement and crest count precomputed, for evaluating Q on grids.
template <PiecewiseFunction F>
class CrestAnalysis {
 public:
  explicit CrestAnalysis(F f)
      : f_(std::move(f)), star_(rearrangement(f_)), crests_(count_crests(f_)) {}

  const F& function() const { return f_; }
  const F& star() const { return star_; }
  std::size_t crest_count() const { return crests_; }

  QReport at(double z) const {
    detail::require_positive(z, "z");
    QReport r;
    r.z = z;
    r.transform_magnitude = std::abs(fourier(f_, z));
    r.tail_integral = integrate(star_, 0.0, 1.0 / z);
    r.crest_count = crests_;
    r.theorem1_bound = static_cast<double>(crests_) * crest_constant() * r.tail_integral;
    r.q_value = r.transform_magnitude / (crest_constant() * r.tail_integral);
    return r;
  }

 private:
  F f_;
  F star_;
  std::size_t crests_;
};

/// Every quantity of the crest bound at one z.
template <PiecewiseFunction F>
QReport theorem1_bound(const F& f, double z) {
  detail::require_positive(z, "z");
  return CrestAnalysis<F>(f).at(z);
}

struct LemmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double crest = 0.0;  // window centre; 0 for the decreasing lemma

  bool holds(double slack = 0.0) const { return lhs <= rhs + slack; }
};

// The sine bound checked is integral_0^{pi/z} f, what the alternating-series
// argument yields (z Sf <= b_0). The half-period window pi/(2z) is kept for
// reporting only: f = chi[0,1] at z = pi already exceeds it (2/pi > 1/2).
struct SineCosineCheck {
  double sine = 0.0;                 // Sf(z)
  double sine_bound = 0.0;           // integral_0^{pi/z} f
  double cosine = 0.0;               // Cf(z)
  double cosine_bound = 0.0;         // integral_0^{3pi/(2z)} f
  double narrow_sine_bound = 0.0;   // integral_0^{pi/(2z)} f

  bool holds(double slack = 0.0) const {
    return sine > 0.0 && sine <= sine_bound + slack && std::abs(cosine) <= cosine_bound + slack;
  }
};

namespace detail {

inline bool nonincreasing(std::span<const double> vs) {
  return std::adjacent_find(vs.begin(), vs.end(), std::less<>()) == vs.end();
}

template <PiecewiseFunction F>
void require_decreasing(const F& f) {
  require_nonzero(f);
  if (f.support_begin() < 0.0) {
    fail(ErrorKind::support_below_zero, "f must vanish on the negative axis");
  }
  if (f.support_begin() > 0.0 || !nonincreasing(value_sequence(f))) {
    fail(ErrorKind::not_decreasing, "f must be nonnegative and nonincreasing on [0, inf)");
  }
}

}  // namespace detail

template <PiecewiseFunction F>
bool is_decreasing_on_half_line(const F& f) {
  return !f.is_zero() && f.support_begin() == 0.0 && detail::nonincreasing(detail::value_sequence(f));
}

/// |fhat(z)| against (pi/2) sqrt(10) integral_0^{1/z} f for decreasing f.
template <PiecewiseFunction F>
LemmaCheck lemma_decreasing_check(const F& f, double z) {
  detail::require_positive(z, "z");
  detail::require_decreasing(f);
  return {std::abs(fourier(f, z)), lemma_constant() * integrate(f, 0.0, 1.0 / z), 0.0};
}

/// Sine and cosine transform bounds for decreasing f.
template <PiecewiseFunction F>
SineCosineCheck sine_cosine_check(const F& f, double z) {
  detail::require_positive(z, "z");
  detail::require_decreasing(f);
  const double quarter = std::numbers::pi / (2.0 * z);
  return {sine_transform(f, z), integrate(f, 0.0, 2.0 * quarter), cosine_transform(f, z),
          integrate(f, 0.0, 3.0 * quarter), integrate(f, 0.0, quarter)};
}

/// |fhat(z)| against (pi/2) sqrt(10) integral over [b - 1/z, b + 1/z] of f, for
/// f that crests once at b (its leftmost maximizer).
template <PiecewiseFunction F>
LemmaCheck lemma_onepeak_check(const F& f, double z) {
  detail::require_positive(z, "z");
  const auto report = decompose(f);
  if (report.count != 1) {
    detail::fail(ErrorKind::not_one_crest,
                 "f crests " + std::to_string(report.count) + " times, expected once");
  }
  const double b = report.crest_locations.front();
  return {std::abs(fourier(f, z)), lemma_constant() * integrate(f, b - 1.0 / z, b + 1.0 / z), b};
}

/// Unit boxes on [2j, 2j+1) for j = 0 .. 5N-1: 5N crests, total integral 5N.
inline StepFunction comb_example(int n) {
  if (n < 1) detail::fail(ErrorKind::non_positive_parameter, "comb size N must be >= 1");
  const int boxes = 5 * n;
  std::vector<double> xs;
  std::vector<double> vs;
  for (int k = 0; k <= 2 * boxes - 1; ++k) xs.push_back(static_cast<double>(k));
  for (int k = 0; k < 2 * boxes - 1; ++k) vs.push_back(k % 2 == 0 ? 1.0 : 0.0);
  return make_step(std::move(xs), std::move(vs));
}

struct GridSpec {
  double min = 1e-2;
  double max = 1e3;
  std::size_t count = 512;
  bool log = true;
};

inline std::vector<double> make_grid(const GridSpec& spec, std::span<const double> extra = {}) {
  detail::require_positive(spec.min, "grid min");
  if (spec.count < 1) detail::fail(ErrorKind::empty_grid, "grid count must be >= 1");
  if (spec.max < spec.min) detail::fail(ErrorKind::non_monotone_breakpoints, "grid max must be >= min");
  std::vector<double> zs;
  if (spec.count == 1) {
    zs.push_back(spec.min);
  } else {
    const double n = static_cast<double>(spec.count - 1);
    for (std::size_t i = 0; i < spec.count; ++i) {
      const double s = static_cast<double>(i) / n;
      zs.push_back(spec.log ? spec.min * std::pow(spec.max / spec.min, s)
                            : spec.min + (spec.max - spec.min) * s);
    }
    zs.back() = spec.max;
  }
  for (double z : extra) {
    detail::require_positive(z, "extra z");
    zs.push_back(z);
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  return zs;
}

/// Odd multiples of pi up to `limit`, where comb-like inputs resonate.
inline std::vector<double> odd_pi_multiples(double limit) {
  std::vector<double> zs;
  for (int k = 1; k * std::numbers::pi <= limit; k += 2) zs.push_back(k * std::numbers::pi);
  return zs;
}

/// 512 log-spaced points on [1e-2, 1e3] plus every odd multiple of pi up to 1e3.
inline std::vector<double> default_grid() {
  const auto extra = odd_pi_multiples(1e3);
  return make_grid(GridSpec{}, extra);
}

namespace detail {

// Evaluates fn(i) for i in [0, n) on up to `threads` threads; results land in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, std::size_t threads, Fn fn) {
  std::vector<T> out(n);
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::size_t best_index(const std::vector<QReport>& reports) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].q_value > reports[best].q_value) best = i;
  }
  return best;
}

}  // namespace detail

struct CertificateOptions {
  std::size_t threads = 1;
  /// Rounds of local refinement around the best z, 16 new points per round.
  std::size_t refine_depth = 0;
};

/// Certificate from the supremum of Q over `grid` (ties go to the smallest z).
///
/// With M the largest integer such that best_q > M + guard, the certified crest
/// bound is M + 1 (at least 1) and the root bound is 2M - 1 (0 when M = 0).
template <PiecewiseFunction F>
BoundCertificate crest_lower_bound(const F& f, std::span<const double> grid, const CertificateOptions& opts = {}) {
  if (grid.empty()) detail::fail(ErrorKind::empty_grid, "z grid is empty");
  for (double z : grid) detail::require_positive(z, "grid z");

  const CrestAnalysis<F> analysis(f);
  std::vector<double> zs(grid.begin(), grid.end());
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

  auto evaluate_all = [&](const std::vector<double>& points) {
    return detail::parallel_map<QReport>(points.size(), opts.threads,
                                         [&](std::size_t i) { return analysis.at(points[i]); });
  };
  std::vector<QReport> reports = evaluate_all(zs);

  for (std::size_t round = 0; round < opts.refine_depth && reports.size() > 1; ++round) {
    const std::size_t k = detail::best_index(reports);
    const double lo = reports[k == 0 ? 0 : k - 1].z;
    const double hi = reports[std::min(k + 1, reports.size() - 1)].z;
    std::vector<double> fresh;
    for (int i = 1; i <= 16; ++i) {
      const double z = lo + (hi - lo) * i / 17.0;
      if (z > 0.0) fresh.push_back(z);
    }
    auto extra = evaluate_all(fresh);
    reports.insert(reports.end(), extra.begin(), extra.end());
    std::sort(reports.begin(), reports.end(), [](const QReport& a, const QReport& b) { return a.z < b.z; });
    reports.erase(std::unique(reports.begin(), reports.end(),
                              [](const QReport& a, const QReport& b) { return a.z == b.z; }),
                  reports.end());
  }

  BoundCertificate cert;
  const std::size_t k = detail::best_index(reports);
  cert.best_z = reports[k].z;
  cert.best_q = reports[k].q_value;
  cert.crest_count = analysis.crest_count();
  const double exceeded = std::ceil(cert.best_q - kThresholdGuard) - 1.0;
  const auto m = exceeded > 0.0 ? static_cast<std::size_t>(exceeded) : std::size_t{0};
  cert.crest_lower_bound = m + 1;
  cert.root_lower_bound = m >= 1 ? 2 * m - 1 : 0;
  cert.derived_root_bound = 2 * cert.crest_lower_bound - 1;
  cert.grid = std::move(reports);
  return cert;
}

}  // namespace crestimate
