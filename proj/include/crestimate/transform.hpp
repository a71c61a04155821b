#pragma once

// Closed-form Fourier, sine and cosine transforms of piecewise functions,
// with the convention  fhat(z) = integral of f(x) exp(-i x z) dx.
//
// Every piece is written about its midpoint m with half-width h, theta = h z:
//   constant c:           c * 2h * sinc(theta) * exp(-i m z)
//   linear mu + s (x-m):  exp(-i m z) * (2h mu sinc(theta) - 2i s h^2 k(theta))
// with k(theta) = (sin theta - theta cos theta) / theta^2. Both kernels are
// evaluated by their Taylor series near 0, where the direct forms cancel.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "crestimate/errors.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/quadrature.hpp"

namespace crestimate {

using ComplexValue = std::complex<double>;

namespace detail {

// Below this |theta| the two-term series for sinc is exact to double precision.
inline constexpr double kSincSeriesThreshold = 0.5e-4;
// The moment kernel cancels to relative order eps/theta^2, so it switches later.
inline constexpr double kMomentSeriesThreshold = 1e-2;

inline double sinc(double theta) {
  if (std::abs(theta) < kSincSeriesThreshold) return 1.0 - theta * theta / 6.0;
  return std::sin(theta) / theta;
}

inline double moment_kernel(double theta) {
  if (std::abs(theta) < kMomentSeriesThreshold) {
    const double t2 = theta * theta;
    return theta * (1.0 / 3.0 - t2 * (1.0 / 30.0 - t2 / 840.0));
  }
  return (std::sin(theta) - theta * std::cos(theta)) / (theta * theta);
}

// Cosine and sine parts of one piece; the piece's transform is cos_part - i sin_part.
struct TrigPair {
  double cos_part = 0.0;
  double sin_part = 0.0;
};

inline TrigPair piece_transform(double a, double b, double mean, double slope, double z) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  const double theta = h * z;
  const double even = 2.0 * h * mean * sinc(theta);
  const double odd = slope == 0.0 ? 0.0 : 2.0 * slope * h * h * moment_kernel(theta);
  const double mz = m * z;
  const double c = std::cos(mz);
  const double s = std::sin(mz);
  return {even * c - odd * s, even * s + odd * c};
}

inline TrigPair trig_parts(const StepFunction& f, double z) {
  TrigPair total;
  const auto xs = f.breakpoints();
  const auto vs = f.values();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] == 0.0) continue;
    const auto p = piece_transform(xs[i], xs[i + 1], vs[i], 0.0, z);
    total.cos_part += p.cos_part;
    total.sin_part += p.sin_part;
  }
  return total;
}

inline TrigPair trig_parts(const PiecewiseLinearFunction& f, double z) {
  TrigPair total;
  const auto ts = f.nodes();
  const auto ys = f.node_values();
  for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
    const double mean = 0.5 * (ys[j] + ys[j + 1]);
    const double slope = (ys[j + 1] - ys[j]) / (ts[j + 1] - ts[j]);
    if (mean == 0.0 && slope == 0.0) continue;
    const auto p = piece_transform(ts[j], ts[j + 1], mean, slope, z);
    total.cos_part += p.cos_part;
    total.sin_part += p.sin_part;
  }
  return total;
}

template <PiecewiseFunction F>
void require_half_line(const F& f, const char* what) {
  if (!f.is_zero() && f.support_begin() < 0.0) {
    fail(ErrorKind::support_below_zero,
         std::string(what) + " requires f supported in [0, inf), support starts at " +
             std::to_string(f.support_begin()));
  }
}

}  // namespace detail

/// Exact transform; fourier(f, 0) is the total integral.
template <PiecewiseFunction F>
ComplexValue fourier(const F& f, double z) {
  const auto p = detail::trig_parts(f, z);
  return {p.cos_part, -p.sin_part};
}

inline ComplexValue fourier(const Function& f, double z) {
  return std::visit([z](const auto& g) { return fourier(g, z); }, f);
}

/// Sf(z) = integral over [0, inf) of f(x) sin(xz).
template <PiecewiseFunction F>
double sine_transform(const F& f, double z) {
  detail::require_positive(z, "z");
  detail::require_half_line(f, "sine transform");
  return detail::trig_parts(f, z).sin_part;
}

/// Cf(z) = integral over [0, inf) of f(x) cos(xz).
template <PiecewiseFunction F>
double cosine_transform(const F& f, double z) {
  detail::require_positive(z, "z");
  detail::require_half_line(f, "cosine transform");
  return detail::trig_parts(f, z).cos_part;
}

struct OracleOptions {
  std::size_t max_panels = 4'000'000;
};

/// Adaptive Gauss-Kronrod quadrature of integral f(x) exp(-ixz) dx, built only
/// from point evaluations of f. Initial panels follow the knots of f and are no
/// wider than pi/(4|z|); panels are bisected until their Kronrod-Gauss
/// difference is within their share of `tol`. Test oracle for fourier().
template <PiecewiseFunction F>
ComplexValue fourier_quadrature_oracle(const F& f, double z, double tol, const OracleOptions& opts = {}) {
  detail::require_positive(tol, "tol");
  const auto ks = knots(f);
  const double span = ks.back() - ks.front();
  const double max_width = z == 0.0 ? span : std::numbers::pi / (4.0 * std::abs(z));

  struct Panel {
    double a, b;
  };
  std::vector<Panel> stack;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const double w = ks[i + 1] - ks[i];
    const auto parts = static_cast<std::size_t>(std::ceil(w / max_width));
    for (std::size_t k = 0; k < parts; ++k) {
      const double a = ks[i] + w * static_cast<double>(k) / static_cast<double>(parts);
      const double b = k + 1 == parts ? ks[i + 1] : ks[i] + w * static_cast<double>(k + 1) / static_cast<double>(parts);
      stack.push_back({a, b});
    }
  }
  if (stack.size() > opts.max_panels) {
    throw ConvergenceError("oracle needs " + std::to_string(stack.size()) + " initial panels at z = " +
                           std::to_string(z));
  }

  double re = 0.0;
  double im = 0.0;
  std::size_t processed = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    if (++processed > opts.max_panels) {
      throw ConvergenceError("oracle exceeded its subdivision budget at z = " + std::to_string(z));
    }
    // Sample strictly inside the panel: the half-open value at a knot belongs
    // to the neighbouring piece.
    auto cos_part = [&](double x) { return f(x) * std::cos(x * z); };
    auto sin_part = [&](double x) { return f(x) * std::sin(x * z); };
    const auto c = gauss_kronrod15(cos_part, p.a, p.b);
    const auto s = gauss_kronrod15(sin_part, p.a, p.b);
    const double err = std::abs(c.kronrod - c.gauss) + std::abs(s.kronrod - s.gauss);
    const double budget = tol * (p.b - p.a) / span;
    const double mid = 0.5 * (p.a + p.b);
    if (err <= budget || !(mid > p.a && mid < p.b)) {
      re += c.kronrod;
      im -= s.kronrod;
    } else {
      stack.push_back({p.a, mid});
      stack.push_back({mid, p.b});
    }
  }
  return {re, im};
}

}  // namespace crestimate
