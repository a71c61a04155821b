#pragma once

// Decreasing rearrangement f*(x) = inf{alpha > 0 : |{f > alpha}| <= x} and the
// quantities built from it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "crestimate/errors.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/quadrature.hpp"

namespace crestimate {

/// |{x : f(x) > alpha}|.
inline double distribution(const StepFunction& f, double alpha) {
  detail::require_positive(alpha, "alpha");
  double measure = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.values()[i] > alpha) measure += f.width(i);
  }
  return measure;
}

namespace detail {

// Measure of {t in segment j : f(t) > alpha}, alpha >= 0.
inline double segment_superlevel(const PiecewiseLinearFunction& f, std::size_t j, double alpha) {
  const double y0 = f.node_values()[j];
  const double y1 = f.node_values()[j + 1];
  const double w = f.nodes()[j + 1] - f.nodes()[j];
  const double hi = std::max(y0, y1);
  const double lo = std::min(y0, y1);
  if (alpha >= hi) return 0.0;
  if (alpha < lo) return w;
  return w * (hi - alpha) / (hi - lo);
}

// Measure of {t in segment j : f(t) == level} for flat segments at that level.
inline double segment_plateau(const PiecewiseLinearFunction& f, std::size_t j, double level) {
  const double y0 = f.node_values()[j];
  const double y1 = f.node_values()[j + 1];
  return (y0 == level && y1 == level) ? f.nodes()[j + 1] - f.nodes()[j] : 0.0;
}

}  // namespace detail

inline double distribution(const PiecewiseLinearFunction& f, double alpha) {
  detail::require_positive(alpha, "alpha");
  double measure = 0.0;
  for (std::size_t j = 0; j < f.segments(); ++j) measure += detail::segment_superlevel(f, j, alpha);
  return measure;
}

/// Measure of the support {f > 0}.
inline double support_measure(const StepFunction& f) {
  double measure = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.values()[i] > 0.0) measure += f.width(i);
  }
  return measure;
}

inline double support_measure(const PiecewiseLinearFunction& f) {
  double measure = 0.0;
  for (std::size_t j = 0; j < f.segments(); ++j) measure += detail::segment_superlevel(f, j, 0.0);
  return measure;
}

/// Decreasing rearrangement of a step function: value/width pairs sorted by
/// value (stable, so ties keep left-to-right order) and laid end to end from 0.
inline StepFunction rearrangement(const StepFunction& f) {
  if (f.is_zero()) return make_step({0.0, f.support_end() - f.support_begin()}, {0.0});
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.values()[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f.values()[a] > f.values()[b]; });
  std::vector<double> xs{0.0};
  std::vector<double> vs;
  for (std::size_t i : order) {
    xs.push_back(xs.back() + f.width(i));
    vs.push_back(f.values()[i]);
  }
  return make_step(std::move(xs), std::move(vs));
}

/// Decreasing rearrangement of a piecewise-linear function.
///
/// The distribution function is linear in alpha between consecutive node
/// values and jumps by the plateau width at a level where f is flat, so f*
/// is piecewise linear with nodes at (|{f > L}|, L) and (|{f >= L}|, L) for
/// every node level L.
inline PiecewiseLinearFunction rearrangement(const PiecewiseLinearFunction& f) {
  if (f.is_zero()) return make_linear({0.0, f.support_end() - f.support_begin()}, {0.0, 0.0});

  std::vector<double> levels(f.node_values().begin(), f.node_values().end());
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto above = [&](double level) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.segments(); ++j) m += detail::segment_superlevel(f, j, level);
    return m;
  };
  auto plateau = [&](double level) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.segments(); ++j) m += detail::segment_plateau(f, j, level);
    return m;
  };

  std::vector<double> xs;
  std::vector<double> ys;
  auto push = [&](double x, double y) {
    if (!xs.empty() && x <= xs.back()) return;
    xs.push_back(x);
    ys.push_back(y);
  };
  for (double level : levels) {
    if (level > 0.0) {
      const double strict = above(level);
      push(strict, level);
      push(strict + plateau(level), level);
    } else {
      const double end = above(0.0);
      // f has no values in (0, min positive level) when it jumps to zero at an
      // end; the rearrangement then ends with the same jump.
      if (end > xs.back()) {
        push(end, 0.0);
      }
    }
  }
  return make_linear(std::move(xs), std::move(ys));
}

template <PiecewiseFunction F>
double rearrangement_integral_of(const F& star, double t) {
  detail::require_positive(t, "t");
  return integrate(star, 0.0, t);
}

/// Integral of f* over [0, t].
template <PiecewiseFunction F>
double rearrangement_integral(const F& f, double t) {
  return rearrangement_integral_of(rearrangement(f), t);
}

namespace detail {

inline void check_weight(const StepFunction& v, const char* name) {
  if (v.support_begin() < 0.0 && !v.is_zero()) {
    fail(ErrorKind::support_below_zero, std::string(name) + " must be supported in [0, inf)");
  }
}

inline std::vector<double> merged_cuts(std::span<const double> a, std::span<const double> b,
                                       double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (double x : a) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  for (double x : b) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// (integral over R of g^p w)^{1/p}: exact for two step functions.
inline double weighted_power_integral(const StepFunction& g, const StepFunction& w, double p) {
  const double lo = std::max(g.support_begin(), w.support_begin());
  const double hi = std::min(g.support_end(), w.support_end());
  if (!(hi > lo)) return 0.0;
  const auto cuts = merged_cuts(g.breakpoints(), w.breakpoints(), lo, hi);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const double gv = g(mid);
    const double wv = w(mid);
    if (gv > 0.0 && wv > 0.0) sum += std::pow(gv, p) * wv * (cuts[i + 1] - cuts[i]);
  }
  return sum;
}

inline double weighted_power_integral(const PiecewiseLinearFunction& g, const StepFunction& w, double p) {
  const double lo = std::max(g.support_begin(), w.support_begin());
  const double hi = std::min(g.support_end(), w.support_end());
  if (!(hi > lo)) return 0.0;
  const auto cuts = merged_cuts(g.nodes(), w.breakpoints(), lo, hi);
  double sum = 0.0;
  QuadratureOptions opts;
  opts.rel_tol = 1e-9;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double wv = w(0.5 * (a + b));
    if (wv == 0.0) continue;
    // Evaluate g on the closed panel through its segment so the right end uses
    // the left limit rather than the half-open value.
    const auto seg = static_cast<std::size_t>(
        std::upper_bound(g.nodes().begin(), g.nodes().end(), 0.5 * (a + b)) - g.nodes().begin() - 1);
    auto integrand = [&](double x) {
      const double gv = g.interpolate(seg, x);
      return gv > 0.0 ? std::pow(gv, p) : 0.0;
    };
    sum += wv * adaptive_simpson(integrand, a, b, opts).value;
  }
  return sum;
}

}  // namespace detail

/// Lorentz norm (integral over [0, inf) of (f*)^p v)^{1/p}.
template <PiecewiseFunction F>
double lorentz_lambda_norm(const F& f, const StepFunction& v, double p) {
  detail::require_positive(p, "p");
  detail::check_weight(v, "v");
  return std::pow(detail::weighted_power_integral(rearrangement(f), v, p), 1.0 / p);
}

/// Plain weighted norm (integral of f^p u)^{1/p}, for comparison with the Lorentz norm.
template <PiecewiseFunction F>
double weighted_lp_norm(const F& f, const StepFunction& u, double p) {
  detail::require_positive(p, "p");
  return std::pow(detail::weighted_power_integral(f, u, p), 1.0 / p);
}

}  // namespace crestimate
