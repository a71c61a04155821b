#pragma once

// Subcommand bodies for the crestimate tool. Each writes its report to `out`
// and throws ValidationError / ConvergenceError on failure; run_command maps
// those to the exit codes 1 and 2.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "crestimate/bounds.hpp"
#include "crestimate/errors.hpp"
#include "crestimate/hardy.hpp"
#include "crestimate/io.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/rearrange.hpp"
#include "crestimate/verify.hpp"

namespace crestimate::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kConvergence = 2 };

enum class Format { json, csv };

struct AnalysisConfig {
  std::string input;  // path or inline JSON
  SampleMode sample_mode = SampleMode::left_step;
  std::optional<GridSpec> grid;  // default_grid() when unset
  std::vector<double> extra_z;
  Format format = Format::json;
  std::size_t refine_depth = 2;
  std::size_t threads = 1;
};

/// Parses "min:max:count:log|lin".
inline GridSpec parse_grid_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4 || (parts[3] != "log" && parts[3] != "lin")) {
    detail::fail(ErrorKind::parse_error, "--grid expects min:max:count:log|lin, got '" + text + "'");
  }
  GridSpec spec;
  try {
    spec.min = std::stod(parts[0]);
    spec.max = std::stod(parts[1]);
    const long count = std::stol(parts[2]);
    if (count < 1) detail::fail(ErrorKind::empty_grid, "--grid count must be >= 1");
    spec.count = static_cast<std::size_t>(count);
  } catch (const std::logic_error&) {
    detail::fail(ErrorKind::parse_error, "--grid has a non-numeric field in '" + text + "'");
  }
  spec.log = parts[3] == "log";
  detail::require_positive(spec.min, "grid min");
  return spec;
}

/// CRESTIMATE_THREADS if set to a positive integer, else the hardware concurrency.
inline std::size_t thread_limit() {
  if (const char* env = std::getenv("CRESTIMATE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

inline std::vector<double> grid_for(const AnalysisConfig& config) {
  if (config.grid) return make_grid(*config.grid, config.extra_z);
  std::vector<double> extra = odd_pi_multiples(1e3);
  extra.insert(extra.end(), config.extra_z.begin(), config.extra_z.end());
  return make_grid(GridSpec{}, extra);
}

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// N when f is exactly comb_example(N).
inline std::optional<int> comb_size(const Function& f) {
  const auto* step = std::get_if<StepFunction>(&f);
  if (!step) return std::nullopt;
  const std::size_t boxes = (step->pieces() + 1) / 2;
  if (boxes == 0 || boxes % 5 != 0) return std::nullopt;
  const int n = static_cast<int>(boxes / 5);
  if (*step == comb_example(n)) return n;
  return std::nullopt;
}

inline Json comb_note(int n) {
  return Json{{"comb_N", n},
              {"note",
               "z = 2*l*pi are zeros of this comb's transform; |fhat| = 10N/z and Q = sqrt(10)N/pi "
               "hold at the odd multiples z = (2l+1)*pi"},
              {"q_at_odd_pi", std::sqrt(10.0) * n / std::numbers::pi}};
}

}  // namespace detail

inline void cmd_analyze(const AnalysisConfig& config, std::ostream& out) {
  const Function f = load_function(config.input, config.sample_mode);
  const auto grid = grid_for(config);
  const CertificateOptions opts{config.threads, config.refine_depth};
  const BoundCertificate cert =
      std::visit([&](const auto& g) { return crest_lower_bound(g, grid, opts); }, f);
  if (config.format == Format::csv) {
    write_grid_csv(out, cert.grid);
    return;
  }
  Json j{{"input_type", std::holds_alternative<StepFunction>(f) ? "step" : "linear"},
         {"crest_count", cert.crest_count},
         {"certificate", to_json(cert)}};
  if (auto n = detail::comb_size(f)) j["comb"] = detail::comb_note(*n);
  detail::emit(out, j);
}

/// Comb of 5N boxes at the requested z, at the stated points 2*l*pi and at the
/// odd multiples (2l+1)*pi where the claimed magnitude holds.
inline void cmd_comb(int n, const std::vector<double>& z_list, const std::vector<int>& harmonics,
                     std::ostream& out) {
  const StepFunction f = comb_example(n);
  const CrestAnalysis<StepFunction> analysis(f);
  auto point = [&](double z) {
    const QReport r = analysis.at(z);
    return Json{{"z", z}, {"abs_fhat", r.transform_magnitude}, {"q", r.q_value}};
  };
  Json requested = Json::array();
  for (double z : z_list) requested.push_back(point(z));
  Json stated = Json::array();
  Json corrected = Json::array();
  for (int l : harmonics) {
    if (l < 1) crestimate::detail::fail(ErrorKind::non_positive_parameter, "harmonic l must be >= 1");
    Json s = point(2.0 * l * std::numbers::pi);
    s["l"] = l;
    stated.push_back(s);
    const double z = (2.0 * l + 1.0) * std::numbers::pi;
    Json c = point(z);
    c["l"] = l;
    c["claimed_abs_fhat"] = 10.0 * n / z;
    corrected.push_back(c);
  }
  Json j{{"N", n},
         {"crest_count", analysis.crest_count()},
         {"total_integral", total_integral(f)},
         {"requested", requested},
         {"stated_points", stated},
         {"corrected_points", corrected}};
  j["erratum"] = detail::comb_note(n);
  detail::emit(out, j);
}

inline VerifySummary cmd_verify(Family family, std::size_t trials, std::uint64_t seed, std::ostream& out) {
  if (trials < 1) crestimate::detail::fail(ErrorKind::non_positive_parameter, "--trials must be >= 1");
  const VerifySummary summary = run_verify(family, trials, seed);
  detail::emit(out, to_json(summary));
  return summary;
}

inline StepFunction load_weight(const std::string& source, const char* name) {
  const Function w = load_function(source);
  if (const auto* step = std::get_if<StepFunction>(&w)) return *step;
  crestimate::detail::fail(ErrorKind::unsupported_input, std::string("weight ") + name + " must be a step function");
}

inline HardyReport cmd_hardy(const std::string& f_source, const std::string& u_source,
                             const std::string& v_source, double p, double q, std::ostream& out) {
  crestimate::detail::require_positive(p, "p");
  crestimate::detail::require_positive(q, "q");
  const Function f = load_function(f_source);
  const StepFunction u = load_weight(u_source, "u");
  const StepFunction v = load_weight(v_source, "v");
  const bool decreasing = std::visit([](const auto& g) { return is_decreasing_on_half_line(g); }, f);
  if (!decreasing) {
    crestimate::detail::fail(ErrorKind::not_decreasing,
                             "the Hardy-to-Fourier chain requires f nonnegative and nonincreasing on "
                             "[0, inf), vanishing on the negative axis");
  }
  const HardyReport report = std::visit([&](const auto& g) { return check_corollary2(g, u, v, p, q); }, f);
  detail::emit(out, to_json(report));
  return report;
}

inline void cmd_rearrange(const std::string& source, std::ostream& out, SampleMode mode = SampleMode::left_step) {
  const Function f = load_function(source, mode);
  const Function star = std::visit([](const auto& g) { return Function(rearrangement(g)); }, f);
  detail::emit(out, to_json(star));
}

/// Root bound for f', conditional on f being smooth with f'(x) = 0 implying
/// f''(x) != 0; that hypothesis is the caller's to assert.
inline BoundCertificate cmd_bound_roots(const AnalysisConfig& config, std::ostream& out) {
  const Function f = load_function(config.input, config.sample_mode);
  const auto* linear = std::get_if<PiecewiseLinearFunction>(&f);
  if (!linear) {
    crestimate::detail::fail(ErrorKind::unsupported_input,
                             "bound-roots needs a piecewise-linear input (roots of f' are undefined for "
                             "step functions); pass {\"type\":\"linear\",...} or CSV samples with --mode linear");
  }
  const auto grid = grid_for(config);
  const BoundCertificate cert =
      crest_lower_bound(*linear, grid, CertificateOptions{config.threads, config.refine_depth});
  Json j{{"crest_count", cert.crest_count},
         {"best_z", cert.best_z},
         {"best_q", cert.best_q},
         {"crest_lower_bound", cert.crest_lower_bound},
         {"root_lower_bound", cert.root_lower_bound},
         {"derived_root_bound", cert.derived_root_bound},
         {"derived_root_bound_note",
          "derived: Q > M certifies at least M+1 crests, hence 2(M+1)-1 roots of f'; "
          "root_lower_bound is the 2M-1 statement"},
         {"status", cert.nontrivial() ? "certified" : "no nontrivial certificate"},
         {"hypothesis", "assumes f smooth with f'(x)=0 implying f''(x)!=0; not checked"}};
  detail::emit(out, j);
  return cert;
}

/// Runs `body`, reporting failures on `err` and returning the exit code.
template <class Body>
int run_command(Body&& body, std::ostream& err) {
  try {
    body();
    return kSuccess;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kConvergence;
  }
}

}  // namespace crestimate::cli
