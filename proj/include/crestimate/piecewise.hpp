#pragma once

// Exact nonnegative piecewise functions with compact support.
//
// StepFunction:           f(x) = v_i on [x_{i-1}, x_i), 0 outside [x_0, x_n).
// PiecewiseLinearFunction: linear interpolation of (t_j, y_j) on [t_0, t_m), 0 outside.
//
// Both are immutable and always held in canonical form, so equality of two
// values is equality of the functions they describe. Every interval is
// half-open on the right; this only changes values on a finite set of points.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crestimate/errors.hpp"

namespace crestimate {

namespace detail {

inline void check_finite(std::span<const double> xs, const char* name) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      fail(ErrorKind::non_finite_value,
           std::string(name) + "[" + std::to_string(i) + "] is not finite");
    }
  }
}

inline void check_strictly_increasing(std::span<const double> xs, const char* name) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i])) {
      fail(ErrorKind::non_monotone_breakpoints,
           std::string(name) + " must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

inline void check_nonnegative(std::span<const double> ys, const char* name) {
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] < 0.0) {
      fail(ErrorKind::negative_value,
           std::string(name) + "[" + std::to_string(i) + "] is negative");
    }
  }
}

}  // namespace detail

class StepFunction {
 public:
  /// Validates and canonicalizes: equal neighbours merge, zero runs at either end are trimmed.
  static StepFunction make(std::vector<double> breakpoints, std::vector<double> values) {
    detail::check_finite(breakpoints, "breakpoints");
    detail::check_finite(values, "values");
    if (values.empty() || breakpoints.size() != values.size() + 1) {
      detail::fail(ErrorKind::length_mismatch,
                   "step function needs n+1 breakpoints for n >= 1 values (got " +
                       std::to_string(breakpoints.size()) + " breakpoints, " +
                       std::to_string(values.size()) + " values)");
    }
    detail::check_strictly_increasing(breakpoints, "breakpoints");
    detail::check_nonnegative(values, "values");

    std::vector<double> xs{breakpoints.front()};
    std::vector<double> vs;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!vs.empty() && vs.back() == values[i]) {
        xs.back() = breakpoints[i + 1];
      } else {
        vs.push_back(values[i]);
        xs.push_back(breakpoints[i + 1]);
      }
    }
    if (vs.size() > 1 && vs.front() == 0.0) {
      xs.erase(xs.begin());
      vs.erase(vs.begin());
    }
    if (vs.size() > 1 && vs.back() == 0.0) {
      xs.pop_back();
      vs.pop_back();
    }
    return StepFunction(std::move(xs), std::move(vs));
  }

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t pieces() const noexcept { return values_.size(); }
  double support_begin() const noexcept { return breakpoints_.front(); }
  double support_end() const noexcept { return breakpoints_.back(); }
  double width(std::size_t i) const noexcept { return breakpoints_[i + 1] - breakpoints_[i]; }
  bool is_zero() const noexcept { return values_.size() == 1 && values_[0] == 0.0; }

  double operator()(double x) const noexcept {
    if (x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  StepFunction(std::vector<double> xs, std::vector<double> vs)
      : breakpoints_(std::move(xs)), values_(std::move(vs)) {}

  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

class PiecewiseLinearFunction {
 public:
  /// Validates and canonicalizes: zero runs at the ends are trimmed and interior
  /// nodes lying exactly on the line through their neighbours are dropped.
  ///
  /// Endpoint values need not be zero. A nonzero end value is a jump to zero at
  /// the support boundary, which is how a decreasing rearrangement such as
  /// 1 - x/2 on [0, 2) is represented.
  static PiecewiseLinearFunction make(std::vector<double> nodes, std::vector<double> node_values) {
    detail::check_finite(nodes, "nodes");
    detail::check_finite(node_values, "node_values");
    if (nodes.size() < 2 || nodes.size() != node_values.size()) {
      detail::fail(ErrorKind::length_mismatch,
                   "piecewise-linear function needs matching nodes and node_values, at least 2 (got " +
                       std::to_string(nodes.size()) + " nodes, " + std::to_string(node_values.size()) +
                       " node_values)");
    }
    detail::check_strictly_increasing(nodes, "nodes");
    detail::check_nonnegative(node_values, "node_values");

    std::size_t lo = 0;
    std::size_t hi = nodes.size() - 1;
    while (hi - lo > 1 && node_values[lo] == 0.0 && node_values[lo + 1] == 0.0) ++lo;
    while (hi - lo > 1 && node_values[hi] == 0.0 && node_values[hi - 1] == 0.0) --hi;

    std::vector<double> ts{nodes[lo]};
    std::vector<double> ys{node_values[lo]};
    for (std::size_t i = lo + 1; i <= hi; ++i) {
      if (ts.size() >= 2) {
        const std::size_t k = ts.size() - 1;
        const double left = (ys[k] - ys[k - 1]) * (nodes[i] - ts[k]);
        const double right = (node_values[i] - ys[k]) * (ts[k] - ts[k - 1]);
        if (left == right) {
          ts.back() = nodes[i];
          ys.back() = node_values[i];
          continue;
        }
      }
      ts.push_back(nodes[i]);
      ys.push_back(node_values[i]);
    }
    return PiecewiseLinearFunction(std::move(ts), std::move(ys));
  }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> node_values() const noexcept { return values_; }
  std::size_t segments() const noexcept { return nodes_.size() - 1; }
  double support_begin() const noexcept { return nodes_.front(); }
  double support_end() const noexcept { return nodes_.back(); }
  bool is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double y) { return y == 0.0; });
  }
  /// True when both end values are zero, i.e. f is continuous on the whole line.
  bool is_continuous() const noexcept { return values_.front() == 0.0 && values_.back() == 0.0; }

  double operator()(double x) const noexcept {
    if (x < nodes_.front() || x >= nodes_.back()) return 0.0;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
    return interpolate(j - 1, x);
  }

  /// Linear interpolation on segment j, valid for x in [t_j, t_{j+1}].
  double interpolate(std::size_t j, double x) const noexcept {
    const double t0 = nodes_[j];
    const double t1 = nodes_[j + 1];
    const double s = (x - t0) / (t1 - t0);
    return values_[j] + s * (values_[j + 1] - values_[j]);
  }

  friend bool operator==(const PiecewiseLinearFunction&, const PiecewiseLinearFunction&) = default;

 private:
  PiecewiseLinearFunction(std::vector<double> ts, std::vector<double> ys)
      : nodes_(std::move(ts)), values_(std::move(ys)) {}

  std::vector<double> nodes_;
  std::vector<double> values_;
};

using Function = std::variant<StepFunction, PiecewiseLinearFunction>;

template <class F>
concept PiecewiseFunction =
    std::same_as<F, StepFunction> || std::same_as<F, PiecewiseLinearFunction>;

inline StepFunction make_step(std::vector<double> breakpoints, std::vector<double> values) {
  return StepFunction::make(std::move(breakpoints), std::move(values));
}

inline PiecewiseLinearFunction make_linear(std::vector<double> nodes, std::vector<double> node_values) {
  return PiecewiseLinearFunction::make(std::move(nodes), std::move(node_values));
}

/// c * indicator of [a, b).
inline StepFunction box(double a, double b, double c = 1.0) { return make_step({a, b}, {c}); }

template <PiecewiseFunction F>
double evaluate(const F& f, double x) noexcept {
  return f(x);
}

inline double evaluate(const Function& f, double x) noexcept {
  return std::visit([x](const auto& g) { return g(x); }, f);
}

/// Exact integral over [a, b]. For a > b the result is -integrate(f, b, a).
inline double integrate(const StepFunction& f, double a, double b) {
  if (a > b) return -integrate(f, b, a);
  const auto xs = f.breakpoints();
  const auto vs = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double lo = std::max(a, xs[i]);
    const double hi = std::min(b, xs[i + 1]);
    if (hi > lo) sum += vs[i] * (hi - lo);
  }
  return sum;
}

/// Exact (trapezoid per segment) integral over [a, b]. For a > b the result is negated.
inline double integrate(const PiecewiseLinearFunction& f, double a, double b) {
  if (a > b) return -integrate(f, b, a);
  const auto ts = f.nodes();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
    const double lo = std::max(a, ts[j]);
    const double hi = std::min(b, ts[j + 1]);
    if (hi > lo) sum += 0.5 * (hi - lo) * (f.interpolate(j, lo) + f.interpolate(j, hi));
  }
  return sum;
}

inline double integrate(const Function& f, double a, double b) {
  return std::visit([a, b](const auto& g) { return integrate(g, a, b); }, f);
}

template <PiecewiseFunction F>
double total_integral(const F& f) {
  return integrate(f, f.support_begin(), f.support_end());
}

/// Breakpoints (steps) or nodes (linear): the points where f may fail to be smooth.
inline std::span<const double> knots(const StepFunction& f) noexcept { return f.breakpoints(); }
inline std::span<const double> knots(const PiecewiseLinearFunction& f) noexcept { return f.nodes(); }

/// f restricted to [lo, hi), zero elsewhere.
inline StepFunction restrict_to(const StepFunction& f, double lo, double hi) {
  const auto xs = f.breakpoints();
  const auto vs = f.values();
  lo = std::max(lo, xs.front());
  hi = std::min(hi, xs.back());
  if (!(lo < hi)) return make_step({xs.front(), xs.back()}, {0.0});
  std::vector<double> bx{lo};
  std::vector<double> bv;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (xs[i + 1] <= lo || xs[i] >= hi) continue;
    bv.push_back(vs[i]);
    bx.push_back(std::min(xs[i + 1], hi));
  }
  return make_step(std::move(bx), std::move(bv));
}

inline PiecewiseLinearFunction restrict_to(const PiecewiseLinearFunction& f, double lo, double hi) {
  const auto ts = f.nodes();
  lo = std::max(lo, ts.front());
  hi = std::min(hi, ts.back());
  if (!(lo < hi)) return make_linear({ts.front(), ts.back()}, {0.0, 0.0});
  std::vector<double> nx{lo};
  std::vector<double> ny{f(lo)};
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (ts[j] > lo && ts[j] < hi) {
      nx.push_back(ts[j]);
      ny.push_back(f.node_values()[j]);
    }
  }
  // Value at hi is the left limit, so the restriction keeps the segment's slope.
  auto it = std::lower_bound(ts.begin(), ts.end(), hi);
  const std::size_t seg = static_cast<std::size_t>(it - ts.begin()) - 1;
  nx.push_back(hi);
  ny.push_back(f.interpolate(seg, hi));
  return make_linear(std::move(nx), std::move(ny));
}

/// x -> f(-x). Interval closure flips side, which is a measure-zero change.
inline StepFunction mirror(const StepFunction& f) {
  std::vector<double> xs(f.breakpoints().rbegin(), f.breakpoints().rend());
  for (double& x : xs) x = -x;
  std::vector<double> vs(f.values().rbegin(), f.values().rend());
  return make_step(std::move(xs), std::move(vs));
}

inline PiecewiseLinearFunction mirror(const PiecewiseLinearFunction& f) {
  std::vector<double> ts(f.nodes().rbegin(), f.nodes().rend());
  for (double& t : ts) t = -t;
  std::vector<double> ys(f.node_values().rbegin(), f.node_values().rend());
  return make_linear(std::move(ts), std::move(ys));
}

inline StepFunction scale(const StepFunction& f, double c) {
  std::vector<double> vs(f.values().begin(), f.values().end());
  for (double& v : vs) v *= c;
  return make_step({f.breakpoints().begin(), f.breakpoints().end()}, std::move(vs));
}

inline PiecewiseLinearFunction scale(const PiecewiseLinearFunction& f, double c) {
  std::vector<double> ys(f.node_values().begin(), f.node_values().end());
  for (double& y : ys) y *= c;
  return make_linear({f.nodes().begin(), f.nodes().end()}, std::move(ys));
}

inline StepFunction translate(const StepFunction& f, double shift) {
  std::vector<double> xs(f.breakpoints().begin(), f.breakpoints().end());
  for (double& x : xs) x += shift;
  return make_step(std::move(xs), {f.values().begin(), f.values().end()});
}

enum class SampleMode { left_step, linear };

/// Builds a function from samples (x_i, y_i).
///
/// left_step: y_i holds on [x_i, x_{i+1}); the last sample's box is as wide as the
/// previous gap.
/// linear: one zero-valued node is added at each end, spaced by the median sample gap.
inline Function from_samples(std::span<const double> xs, std::span<const double> ys, SampleMode mode) {
  detail::check_finite(xs, "x");
  detail::check_finite(ys, "y");
  if (xs.size() != ys.size()) {
    detail::fail(ErrorKind::length_mismatch, "x and y columns differ in length");
  }
  if (xs.size() < 2) {
    detail::fail(ErrorKind::length_mismatch, "at least two samples are required");
  }
  detail::check_strictly_increasing(xs, "x");
  detail::check_nonnegative(ys, "y");

  const std::size_t n = xs.size();
  if (mode == SampleMode::left_step) {
    std::vector<double> bx(xs.begin(), xs.end());
    bx.push_back(xs[n - 1] + (xs[n - 1] - xs[n - 2]));
    return make_step(std::move(bx), {ys.begin(), ys.end()});
  }

  std::vector<double> gaps(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) gaps[i] = xs[i + 1] - xs[i];
  std::sort(gaps.begin(), gaps.end());
  const std::size_t m = gaps.size();
  const double median = (m % 2 == 1) ? gaps[m / 2] : 0.5 * (gaps[m / 2 - 1] + gaps[m / 2]);

  std::vector<double> ts{xs[0] - median};
  std::vector<double> vs{0.0};
  ts.insert(ts.end(), xs.begin(), xs.end());
  vs.insert(vs.end(), ys.begin(), ys.end());
  ts.push_back(xs[n - 1] + median);
  vs.push_back(0.0);
  return make_linear(std::move(ts), std::move(vs));
}

}  // namespace crestimate
