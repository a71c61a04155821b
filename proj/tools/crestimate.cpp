// crestimate: crest-count bounds, rearrangements and Hardy chains from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crestimate/cli.hpp"

namespace {

using namespace crestimate;

struct Common {
  std::string grid;
  std::vector<double> extra_z;
  std::string format = "json";
  std::string mode = "left-step";
  std::string out;
  std::size_t refine = 2;
};

cli::AnalysisConfig make_config(const std::string& input, const Common& c) {
  cli::AnalysisConfig config;
  config.input = input;
  config.sample_mode = c.mode == "linear" ? SampleMode::linear : SampleMode::left_step;
  if (!c.grid.empty()) config.grid = cli::parse_grid_spec(c.grid);
  config.extra_z = c.extra_z;
  config.format = c.format == "csv" ? cli::Format::csv : cli::Format::json;
  config.refine_depth = c.refine;
  config.threads = cli::thread_limit();
  return config;
}

void add_grid_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--grid", c.grid, "z grid as min:max:count:log|lin (default: 512 log points on "
                                    "[1e-2, 1e3] plus odd multiples of pi up to 1e3)");
  cmd->add_option("--extra-z", c.extra_z, "additional z values")->delimiter(',');
  cmd->add_option("--refine", c.refine, "rounds of local refinement around the best z")
      ->check(CLI::NonNegativeNumber);
}

void add_mode_option(CLI::App* cmd, Common& c) {
  cmd->add_option("--mode", c.mode,
                  "CSV sample mapping: left-step (y_i holds until the next sample; the last box is as "
                  "wide as the previous gap) or linear (interpolated, zero-padded by the median gap)")
      ->check(CLI::IsMember({"left-step", "linear"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crestimate: pointwise Fourier bounds from crest counts"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--out", common.out, "write the report to this file instead of stdout");

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Q(z) grid and crest/root certificate for a function");
  analyze->add_option("input", input, "function JSON file, inline JSON, or x,y CSV")->required();
  add_grid_options(analyze, common);
  add_mode_option(analyze, common);
  analyze->add_option("--format", common.format, "json or csv (grid only)")
      ->check(CLI::IsMember({"json", "csv"}));

  int comb_n = 1;
  std::vector<double> comb_z;
  std::vector<int> harmonics{1, 2, 3, 50};
  auto* comb = app.add_subcommand("comb", "the 5N-box comb at stated and corrected resonances");
  comb->add_option("N", comb_n, "comb size (5N boxes)")->required();
  comb->add_option("--z", comb_z, "z values to evaluate")->delimiter(',');
  comb->add_option("--harmonics", harmonics, "l values for z = 2l*pi and (2l+1)*pi")->delimiter(',');

  std::string family = "step";
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "randomized inequality suites");
  verify->add_option("--family", family, "step | decreasing | one-crest")
      ->check(CLI::IsMember({"step", "decreasing", "one-crest"}));
  verify->add_option("--trials", trials, "number of random functions");
  verify->add_option("--seed", seed, "generator seed");

  std::string u_path;
  std::string v_path;
  double p = 2.0;
  double q = 2.0;
  auto* hardy = app.add_subcommand("hardy", "both sides of the Hardy-to-Fourier chain for decreasing f");
  hardy->add_option("f", input, "decreasing function on [0, inf)")->required();
  hardy->add_option("u", u_path, "step weight u")->required();
  hardy->add_option("v", v_path, "step weight v")->required();
  hardy->add_option("-p", p, "exponent on the Lorentz side");
  hardy->add_option("-q", q, "exponent on the Fourier side");

  auto* rearrange = app.add_subcommand("rearrange", "decreasing rearrangement f*, as function JSON");
  rearrange->add_option("input", input, "function JSON file, inline JSON, or x,y CSV")->required();
  add_mode_option(rearrange, common);

  auto* roots = app.add_subcommand(
      "bound-roots",
      "lower bound on the roots of f' for piecewise-linear f, assuming f smooth with f'=0 => f''!=0");
  roots->add_option("input", input, "piecewise-linear function JSON or x,y CSV (use --mode linear)")->required();
  add_grid_options(roots, common);
  add_mode_option(roots, common);

  CLI11_PARSE(app, argc, argv);

  std::ostringstream report;
  const int code = cli::run_command(
      [&] {
        if (*analyze) {
          cli::cmd_analyze(make_config(input, common), report);
        } else if (*comb) {
          cli::cmd_comb(comb_n, comb_z, harmonics, report);
        } else if (*verify) {
          const Family fam = family == "decreasing" ? Family::decreasing
                             : family == "one-crest"  ? Family::one_crest
                                                      : Family::step;
          cli::cmd_verify(fam, trials, seed, report);
        } else if (*hardy) {
          cli::cmd_hardy(input, u_path, v_path, p, q, report);
        } else if (*rearrange) {
          cli::cmd_rearrange(input, report, make_config(input, common).sample_mode);
        } else if (*roots) {
          cli::cmd_bound_roots(make_config(input, common), report);
        }
      },
      std::cerr);
  if (code != cli::kSuccess) return code;

  if (common.out.empty()) {
    std::cout << report.str();
  } else {
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << common.out << "'\n";
      return cli::kValidation;
    }
    file << report.str();
  }
  return cli::kSuccess;
}
