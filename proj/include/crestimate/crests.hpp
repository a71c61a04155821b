#pragma once

// Crest counting: the fewest nonnegative unimodal summands with almost
// disjoint supports that add up to f.
//
// For piecewise data the count is 1 + the number of valleys in the value
// sequence padded with a zero at each end, where a valley is a run of equal
// values whose neighbours on both sides are strictly larger. Monotonicity is
// in the wide sense, so a plateau never opens or closes a valley.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crestimate/errors.hpp"
#include "crestimate/piecewise.hpp"

namespace crestimate {

template <PiecewiseFunction F>
struct CrestReport {
  std::size_t count = 0;
  std::vector<double> cut_points;       // count - 1 points, increasing
  std::vector<double> crest_locations;  // leftmost maximizer of each piece
  std::vector<F> pieces;                // f restricted to each cell
};

namespace detail {

// A maximal run [first, last] of equal entries in a value sequence.
struct Run {
  std::size_t first;
  std::size_t last;
  double value;
};

inline std::vector<Run> runs_of(std::span<const double> values) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!runs.empty() && runs.back().value == values[i]) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i, values[i]});
    }
  }
  return runs;
}

// Runs that are valleys once the sequence is padded with zeros at both ends.
// A run touching either end is never a valley, since the padding is <= it.
inline std::vector<Run> valleys(std::span<const double> values) {
  const auto runs = runs_of(values);
  std::vector<Run> out;
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    if (runs[r - 1].value > runs[r].value && runs[r + 1].value > runs[r].value) out.push_back(runs[r]);
  }
  return out;
}

template <PiecewiseFunction F>
void require_nonzero(const F& f) {
  if (f.is_zero()) {
    fail(ErrorKind::zero_function, "crest count is undefined for the zero function");
  }
}

inline std::span<const double> value_sequence(const StepFunction& f) { return f.values(); }
inline std::span<const double> value_sequence(const PiecewiseLinearFunction& f) { return f.node_values(); }

// Cut point inside a valley. Zero gaps are cut at their midpoint; a positive
// valley at its leftmost point.
inline double valley_cut(const StepFunction& f, const Run& v) {
  const auto xs = f.breakpoints();
  if (v.value == 0.0) return 0.5 * (xs[v.first] + xs[v.last + 1]);
  return xs[v.first];
}

inline double valley_cut(const PiecewiseLinearFunction& f, const Run& v) {
  const auto ts = f.nodes();
  if (v.value == 0.0) return 0.5 * (ts[v.first] + ts[v.last]);
  return ts[v.first];
}

inline double leftmost_maximizer(const StepFunction& f) {
  const auto vs = f.values();
  const auto it = std::max_element(vs.begin(), vs.end());
  return f.breakpoints()[static_cast<std::size_t>(it - vs.begin())];
}

inline double leftmost_maximizer(const PiecewiseLinearFunction& f) {
  const auto ys = f.node_values();
  const auto it = std::max_element(ys.begin(), ys.end());
  return f.nodes()[static_cast<std::size_t>(it - ys.begin())];
}

}  // namespace detail

template <PiecewiseFunction F>
std::size_t count_crests(const F& f) {
  detail::require_nonzero(f);
  return 1 + detail::valleys(detail::value_sequence(f)).size();
}

inline std::size_t count_crests(const Function& f) {
  return std::visit([](const auto& g) { return count_crests(g); }, f);
}

/// True when f crests exactly once.
template <PiecewiseFunction F>
bool is_unimodal(const F& f) {
  return f.is_zero() || detail::valleys(detail::value_sequence(f)).empty();
}

/// A decomposition achieving count_crests(f): one cut inside each valley.
template <PiecewiseFunction F>
CrestReport<F> decompose(const F& f) {
  detail::require_nonzero(f);
  CrestReport<F> report;
  for (const auto& v : detail::valleys(detail::value_sequence(f))) {
    report.cut_points.push_back(detail::valley_cut(f, v));
  }
  report.count = report.cut_points.size() + 1;

  double lo = f.support_begin();
  for (std::size_t k = 0; k < report.count; ++k) {
    const double hi = k + 1 < report.count ? report.cut_points[k] : f.support_end();
    F piece = restrict_to(f, lo, hi);
    report.crest_locations.push_back(detail::leftmost_maximizer(piece));
    report.pieces.push_back(std::move(piece));
    lo = hi;
  }
  return report;
}

namespace detail {

inline bool unimodal_sequence(std::span<const double> vs) {
  std::size_t i = 1;
  while (i < vs.size() && vs[i] >= vs[i - 1]) ++i;
  while (i < vs.size() && vs[i] <= vs[i - 1]) ++i;
  return i >= vs.size();
}

}  // namespace detail

/// Exhaustive minimum over every way of cutting the canonical pieces into
/// contiguous cells that are each unimodal. Oracle for count_crests.
inline std::size_t brute_force_crests(const StepFunction& f, std::size_t max_pieces = 10) {
  detail::require_nonzero(f);
  const auto vs = f.values();
  const std::size_t n = vs.size();
  if (n > max_pieces) {
    detail::fail(ErrorKind::too_many_pieces, "brute force is limited to " + std::to_string(max_pieces) +
                                                 " pieces, got " + std::to_string(n));
  }
  const std::size_t gaps = n - 1;
  std::size_t best = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << gaps); ++mask) {
    std::size_t cells = 0;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const bool cut_after = i + 1 == n || (mask >> i) & 1U;
      if (!cut_after) continue;
      ok = detail::unimodal_sequence(vs.subspan(start, i + 1 - start));
      ++cells;
      start = i + 1;
    }
    if (ok) best = std::min(best, cells);
  }
  return best;
}

}  // namespace crestimate
