#pragma once

// Globally adaptive quadrature.
//
// adaptive_simpson: bisection with a Richardson-extrapolated Simpson rule. The
// panel with the largest error estimate is split until the summed estimate
// meets max(abs_tol, rel_tol * |I|) or the panel cap is reached.
//
// gauss_kronrod15: the 7/15-point Gauss-Kronrod pair on one panel.

#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "crestimate/errors.hpp"

namespace crestimate {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-300;
  std::size_t max_panels = std::size_t{1} << 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

struct SimpsonPanel {
  double a, b;
  double fa, fm, fb;      // ends and midpoint
  double fl, fr;          // quarter points
  double estimate;
  double error;

  bool operator<(const SimpsonPanel& other) const { return error < other.error; }
};

template <class Fn>
SimpsonPanel make_panel(Fn& f, double a, double b, double fa, double fm, double fb) {
  const double m = 0.5 * (a + b);
  const double fl = f(0.5 * (a + m));
  const double fr = f(0.5 * (m + b));
  const double h = b - a;
  const double coarse = h / 6.0 * (fa + 4.0 * fm + fb);
  const double fine = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
  const double diff = (fine - coarse) / 15.0;
  return SimpsonPanel{a, b, fa, fm, fb, fl, fr, fine + diff, std::abs(diff)};
}

}  // namespace detail

/// Integrates f over [cuts.front(), cuts.back()], starting with one panel per
/// consecutive pair of cuts. Put every discontinuity or kink of f in `cuts`.
template <class Fn>
QuadratureResult adaptive_simpson(Fn&& f, std::span<const double> cuts, const QuadratureOptions& opts = {}) {
  QuadratureResult result;
  if (cuts.size() < 2) return result;

  std::priority_queue<detail::SimpsonPanel> work;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (!(b > a)) continue;
    auto p = detail::make_panel(f, a, b, f(a), f(0.5 * (a + b)), f(b));
    total += p.estimate;
    total_err += p.error;
    work.push(p);
  }

  while (!work.empty() && total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (work.size() >= opts.max_panels) {
      throw ConvergenceError("adaptive quadrature exceeded " + std::to_string(opts.max_panels) +
                             " panels (error estimate " + std::to_string(total_err) + ")");
    }
    const detail::SimpsonPanel p = work.top();
    work.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      throw ConvergenceError("adaptive quadrature panel collapsed to machine precision near x = " +
                             std::to_string(p.a));
    }
    auto left = detail::make_panel(f, p.a, m, p.fa, p.fl, p.fm);
    auto right = detail::make_panel(f, m, p.b, p.fm, p.fr, p.fb);
    total += left.estimate + right.estimate - p.estimate;
    total_err += left.error + right.error - p.error;
    work.push(left);
    work.push(right);
  }

  result.panels = work.size();
  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!work.empty()) {
    value += work.top().estimate;
    err += work.top().error;
    work.pop();
  }
  result.value = value;
  result.error = err;
  return result;
}

template <class Fn>
QuadratureResult adaptive_simpson(Fn&& f, double a, double b, const QuadratureOptions& opts = {}) {
  const double cuts[2] = {a, b};
  return adaptive_simpson(f, std::span<const double>(cuts), opts);
}

struct KronrodEstimate {
  double kronrod;
  double gauss;
};

/// One 7/15-point Gauss-Kronrod panel. Returns both rules so callers can form
/// their own error estimate.
template <class Fn>
KronrodEstimate gauss_kronrod15(Fn&& f, double a, double b) {
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  return {kronrod * half, gauss * half};
}

}  // namespace crestimate
