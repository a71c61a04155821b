#pragma once

// Randomized inequality suites over seeded function families. Each trial i
// draws its function from Rng::stream(seed, i), so any reported violation can
// be replayed from its index.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "crestimate/bounds.hpp"
#include "crestimate/crests.hpp"
#include "crestimate/io.hpp"
#include "crestimate/random.hpp"

namespace crestimate {

enum class Family { step, decreasing, one_crest };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::step: return "step";
    case Family::decreasing: return "decreasing";
    case Family::one_crest: return "one-crest";
  }
  return "unknown";
}

struct Violation {
  std::string check;
  std::size_t trial = 0;
  double z = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  Json function;
};

struct VerifySummary {
  Family family = Family::step;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  double max_ratio = 0.0;           // largest lhs / rhs seen across checks
  std::size_t certificate_failures = 0;  // step family: certified bound above true count
  // decreasing family: Sf(z) above the half-period window integral_0^{pi/(2z)} f.
  // Informational; the checked sine bound uses pi/z.
  std::size_t narrow_sine_exceedances = 0;
  double narrow_sine_max_ratio = 0.0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty() && certificate_failures == 0; }
};

/// 50 log-spaced points on [1e-3, 1e3].
inline std::vector<double> verify_grid() { return make_grid(GridSpec{1e-3, 1e3, 50, true}); }

namespace detail {

struct SuiteState {
  VerifySummary& summary;
  const StepFunction& f;
  std::size_t trial;

  void check(const char* name, double z, double lhs, double rhs, double slack) {
    ++summary.evaluations;
    if (rhs > 0.0) summary.max_ratio = std::max(summary.max_ratio, lhs / rhs);
    if (!(lhs <= rhs + slack)) summary.violations.push_back({name, trial, z, lhs, rhs, to_json(f)});
  }

  void require_positive(const char* name, double z, double value) {
    ++summary.evaluations;
    if (!(value > 0.0)) summary.violations.push_back({name, trial, z, value, 0.0, to_json(f)});
  }
};

}  // namespace detail

/// step: crest bound and certificate soundness; decreasing: the decreasing
/// lemma plus sine/cosine bounds (see SineCosineCheck for the sine window);
/// one-crest: the windowed one-crest lemma.
///
/// Slack: relative 1e-9 on the crest bound, absolute 1e-12 on the lemmas.
inline VerifySummary run_verify(Family family, std::size_t trials, std::uint64_t seed,
                                const std::vector<double>& grid = verify_grid()) {
  VerifySummary summary;
  summary.family = family;
  summary.trials = trials;
  summary.seed = seed;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    switch (family) {
      case Family::step: {
        const StepFunction f = random_step(rng);
        detail::SuiteState state{summary, f, t};
        const CrestAnalysis<StepFunction> analysis(f);
        for (double z : grid) {
          const QReport r = analysis.at(z);
          state.check("crest_bound", z, r.transform_magnitude, r.theorem1_bound, 1e-9 * r.theorem1_bound);
        }
        const auto cert = crest_lower_bound(f, grid);
        if (cert.crest_lower_bound > analysis.crest_count()) ++summary.certificate_failures;
        break;
      }
      case Family::decreasing: {
        const StepFunction f = random_decreasing_step(rng);
        detail::SuiteState state{summary, f, t};
        for (double z : grid) {
          const auto lemma = lemma_decreasing_check(f, z);
          state.check("decreasing_lemma", z, lemma.lhs, lemma.rhs, 1e-12);
          const auto sc = sine_cosine_check(f, z);
          state.require_positive("sine_positive", z, sc.sine);
          state.check("sine_bound", z, sc.sine, sc.sine_bound, 1e-12);
          if (sc.sine > sc.narrow_sine_bound + 1e-12) ++summary.narrow_sine_exceedances;
          summary.narrow_sine_max_ratio = std::max(summary.narrow_sine_max_ratio, sc.sine / sc.narrow_sine_bound);
          state.check("cosine_bound", z, std::abs(sc.cosine), sc.cosine_bound, 1e-12);
        }
        break;
      }
      case Family::one_crest: {
        const StepFunction f = random_one_crest_step(rng);
        detail::SuiteState state{summary, f, t};
        for (double z : grid) {
          const auto lemma = lemma_onepeak_check(f, z);
          state.check("one_crest_lemma", z, lemma.lhs, lemma.rhs, 1e-12);
        }
        break;
      }
    }
  }
  return summary;
}

inline Json to_json(const VerifySummary& s) {
  Json violations = Json::array();
  for (const auto& v : s.violations) {
    violations.push_back(Json{{"check", v.check},
                              {"trial", v.trial},
                              {"z", v.z},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs},
                              {"function", v.function}});
  }
  const std::string summary_line = std::to_string(s.violations.size()) + " violations, max lhs/bound = " +
                                   format_double(s.max_ratio);
  Json j{{"family", to_string(s.family)},
         {"trials", s.trials},
         {"seed", s.seed},
         {"evaluations", s.evaluations},
         {"violation_count", s.violations.size()},
         {"certificate_failures", s.certificate_failures},
         {"max_ratio", s.max_ratio},
         {"passed", s.passed()},
         {"summary", summary_line}};
  if (s.family == Family::decreasing) {
    j["narrow_sine_window"] = Json{
        {"note", "Sf(z) <= integral_0^{pi/(2z)} f fails (e.g. chi[0,1] at z = pi); the alternating-series argument gives "
                 "integral_0^{pi/z} f, which is the bound checked"},
        {"exceedances", s.narrow_sine_exceedances},
        {"max_ratio", s.narrow_sine_max_ratio}};
  }
  j["violations"] = std::move(violations);
  return j;
}

}  // namespace crestimate
