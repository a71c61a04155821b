#pragma once

// Weighted Hardy operator and the Hardy-to-Fourier chain for decreasing f.
//
// For decreasing f, |fhat(z)| <= (pi/2) sqrt(10) integral_0^{1/z} f, so
//
//   (int_0^inf |fhat|^q u)^{1/q} <= (pi/2) sqrt(10) (int_0^inf (int_0^{1/z} f)^q u(z) dz)^{1/q}
//
// and the right-hand side equals the weighted Hardy norm
// (int_0^inf (int_0^z f)^q u(1/z) z^{-2} dz)^{1/q} by z -> 1/z. A Hardy
// inequality with constant C therefore gives the Fourier inequality with
// constant (pi/2) sqrt(10) C.
//
// Weights are compactly supported step functions on [0, inf), so every
// improper integral truncates at the weight's support.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "crestimate/bounds.hpp"
#include "crestimate/errors.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/quadrature.hpp"
#include "crestimate/rearrange.hpp"
#include "crestimate/transform.hpp"

namespace crestimate {

/// Smallest admissible left end of u's support when q < 1.
inline constexpr double kWeightMargin = 1e-6;

/// Relative tolerance of the norm quadratures.
inline constexpr double kHardyRelTol = 1e-8;

struct NormEstimate {
  double value = 0.0;            // the norm, integral^{1/q}
  double integral = 0.0;         // the integral before the 1/q power
  double integral_error = 0.0;   // quadrature error estimate of `integral`
};

struct HardyReport {
  double fourier_weighted_norm = 0.0;
  double hardy_middle = 0.0;
  double lambda_rhs = 0.0;
  double chain_constant = 0.0;
  double p = 0.0;
  double q = 0.0;
  double fourier_error = 0.0;   // integral error estimates
  double hardy_error = 0.0;
  /// fourier_weighted_norm <= chain_constant * hardy_middle * (1 + 1e-6)
  bool chain_holds = false;
  /// hardy_middle / lambda_rhs: a lower bound for any admissible Hardy constant C.
  double hardy_ratio = 0.0;
  /// chain_constant * hardy_ratio: the Fourier constant implied by that C.
  double implied_fourier_constant = 0.0;
};

/// integral_0^z f.
template <PiecewiseFunction F>
double hardy_operator(const F& f, double z) {
  detail::require_positive(z, "z");
  detail::require_half_line(f, "hardy operator");
  return integrate(f, 0.0, z);
}

namespace detail {

inline void check_hardy_weight(const StepFunction& u, double q) {
  check_weight(u, "u");
  if (q < 1.0 && !u.is_zero() && u.support_begin() < kWeightMargin) {
    fail(ErrorKind::weight_margin, "for q < 1 the weight u must vanish on [0, 1e-6)");
  }
}

template <class Fn>
NormEstimate weighted_norm(const StepFunction& u, double q, Fn&& piece_integral) {
  NormEstimate est;
  const auto xs = u.breakpoints();
  const auto vs = u.values();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] == 0.0) continue;
    const QuadratureResult r = piece_integral(xs[i], xs[i + 1]);
    est.integral += vs[i] * r.value;
    est.integral_error += vs[i] * r.error;
  }
  est.value = std::pow(est.integral, 1.0 / q);
  return est;
}

inline void add_cut(std::vector<double>& cuts, double x, double lo, double hi) {
  if (x > lo && x < hi) cuts.push_back(x);
}

inline void sort_cuts(std::vector<double>& cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
}

}  // namespace detail

/// (int_0^inf (int_0^{1/z} f)^q u(z) dz)^{1/q} for decreasing f, by adaptive quadrature.
template <PiecewiseFunction F>
NormEstimate hardy_lhs(const F& f, const StepFunction& u, double q) {
  detail::require_positive(q, "q");
  detail::require_decreasing(f);
  detail::check_hardy_weight(u, q);

  const double total = total_integral(f);
  auto inner = [&](double z) {
    const double upper = z > 0.0 ? 1.0 / z : f.support_end();
    return std::pow(std::min(integrate(f, 0.0, upper), total), q);
  };
  QuadratureOptions opts;
  opts.rel_tol = kHardyRelTol;
  return detail::weighted_norm(u, q, [&](double a, double b) {
    std::vector<double> cuts{a, b};
    for (double x : knots(f)) {
      if (x > 0.0) detail::add_cut(cuts, 1.0 / x, a, b);
    }
    detail::sort_cuts(cuts);
    return adaptive_simpson(inner, cuts, opts);
  });
}

/// The same quantity in its original form, (int_0^inf (int_0^z f)^q u(1/z) z^{-2} dz)^{1/q}.
///
/// Past the end of f's support the inner integral is constant and the remaining
/// z^{-2} integral is taken in closed form; that tail is unbounded when u's
/// support reaches 0, so it cannot be left to quadrature.
template <PiecewiseFunction F>
NormEstimate hardy_lhs_direct(const F& f, const StepFunction& u, double q) {
  detail::require_positive(q, "q");
  detail::require_decreasing(f);
  detail::check_hardy_weight(u, q);

  const double total = total_integral(f);
  const double flat_from = f.support_end();
  auto integrand = [&](double z) { return std::pow(integrate(f, 0.0, z), q) / (z * z); };
  QuadratureOptions opts;
  opts.rel_tol = kHardyRelTol;
  return detail::weighted_norm(u, q, [&](double a, double b) {
    // u(1/z) is this piece for z in (1/b, 1/a].
    const double z_lo = 1.0 / b;
    const double z_hi = a > 0.0 ? 1.0 / a : std::numeric_limits<double>::infinity();
    QuadratureResult r;
    const double numeric_hi = std::min(z_hi, flat_from);
    if (numeric_hi > z_lo) {
      std::vector<double> cuts{z_lo, numeric_hi};
      for (double x : knots(f)) detail::add_cut(cuts, x, z_lo, numeric_hi);
      detail::sort_cuts(cuts);
      r = adaptive_simpson(integrand, cuts, opts);
    }
    const double tail_lo = std::max(z_lo, flat_from);
    if (z_hi > tail_lo) {
      // int_{tail_lo}^{z_hi} z^{-2} dz = 1/tail_lo - 1/z_hi
      r.value += std::pow(total, q) * (1.0 / tail_lo - a);
    }
    return r;
  });
}

/// (int |fhat(z)|^q u(z) dz)^{1/q} over u's support, with the closed-form transform.
template <PiecewiseFunction F>
NormEstimate fourier_weighted_norm(const F& f, const StepFunction& u, double q) {
  detail::require_positive(q, "q");
  detail::check_weight(u, "u");

  const auto ks = knots(f);
  const double reach = std::max(std::abs(ks.front()), std::abs(ks.back()));
  // Seed panels no wider than a quarter period of the fastest oscillation.
  const double seed_width = std::numbers::pi / (2.0 * (1.0 + reach));
  auto integrand = [&](double z) { return std::pow(std::abs(fourier(f, z)), q); };
  QuadratureOptions opts;
  opts.rel_tol = kHardyRelTol;
  return detail::weighted_norm(u, q, [&](double a, double b) {
    const auto parts = static_cast<std::size_t>(std::ceil((b - a) / seed_width));
    std::vector<double> cuts;
    for (std::size_t k = 0; k <= parts; ++k) {
      cuts.push_back(k == parts ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(parts));
    }
    return adaptive_simpson(integrand, cuts, opts);
  });
}

/// Both sides of the Hardy-to-Fourier chain for decreasing f.
template <PiecewiseFunction F>
HardyReport check_corollary2(const F& f, const StepFunction& u, const StepFunction& v, double p, double q) {
  detail::require_positive(p, "p");
  detail::require_positive(q, "q");
  detail::require_decreasing(f);
  detail::check_weight(v, "v");

  const NormEstimate fourier_side = fourier_weighted_norm(f, u, q);
  const NormEstimate hardy_side = hardy_lhs(f, u, q);

  HardyReport report;
  report.fourier_weighted_norm = fourier_side.value;
  report.hardy_middle = hardy_side.value;
  report.lambda_rhs = lorentz_lambda_norm(f, v, p);
  report.chain_constant = lemma_constant();
  report.p = p;
  report.q = q;
  report.fourier_error = fourier_side.integral_error;
  report.hardy_error = hardy_side.integral_error;
  report.chain_holds = report.fourier_weighted_norm <= report.chain_constant * report.hardy_middle * (1.0 + 1e-6);
  if (report.lambda_rhs > 0.0) {
    report.hardy_ratio = report.hardy_middle / report.lambda_rhs;
    report.implied_fourier_constant = report.chain_constant * report.hardy_ratio;
  } else {
    report.hardy_ratio = std::numeric_limits<double>::infinity();
    report.implied_fourier_constant = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace crestimate
