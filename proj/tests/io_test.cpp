#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "crestimate/cli.hpp"
#include "crestimate/io.hpp"

using namespace crestimate;

namespace {

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Json, RoundTrip) {
  const Function f = make_step({0, 0.1, 3}, {2.5, 1.0 / 3.0});
  const Function g = make_linear({0, 1, 2}, {0, 1, 0});
  EXPECT_EQ(function_from_json(to_json(f)), f);
  EXPECT_EQ(parse_function(to_json(g).dump()), g);
}

TEST(Json, Diagnostics) {
  EXPECT_NE(message_of([] { parse_function(R"({"type":"step","values":[1]})"); }).find("missing field 'breakpoints'"),
            std::string::npos);
  EXPECT_NE(message_of([] { parse_function(R"({"breakpoints":[0,1],"values":[1]})"); }).find("missing field 'type'"),
            std::string::npos);
  EXPECT_NE(message_of([] { parse_function(R"({"type":"step","breakpoints":[0,"x"],"values":[1]})"); })
                .find("'breakpoints'[1]"),
            std::string::npos);
  EXPECT_NE(message_of([] { parse_function(R"({"type":"cubic"})"); }).find("cubic"), std::string::npos);
  EXPECT_THROW(parse_function("{not json"), ValidationError);
}

TEST(Csv, HeaderAndRows) {
  std::istringstream in("x,y\n0,1\n1,0\r\n\n2,1\n");
  const Samples s = read_samples_csv(in);
  EXPECT_EQ(s.x, (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(s.y, (std::vector<double>{1, 0, 1}));
}

TEST(Csv, LineDiagnostics) {
  std::istringstream bad_y("0,1\n1,abc\n");
  try {
    read_samples_csv(bad_y);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream one_column("0,1\n5\n");
  EXPECT_THROW(read_samples_csv(one_column), ValidationError);
}

TEST(Csv, GridColumnsAndDigits) {
  const auto cert = crest_lower_bound(box(0, 1), std::vector<double>{0.5, std::numbers::pi});
  std::ostringstream out;
  write_grid_csv(out, cert.grid);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "z,abs_fhat,tail_integral,bound,q");
  EXPECT_NE(text.find("3.1415926535897931,"), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Cli, GridSpec) {
  const auto g = cli::parse_grid_spec("0.5:10:20:lin");
  EXPECT_EQ(g.min, 0.5);
  EXPECT_EQ(g.max, 10.0);
  EXPECT_EQ(g.count, 20u);
  EXPECT_FALSE(g.log);
  EXPECT_THROW(cli::parse_grid_spec("0:10:20:log"), ValidationError);
  EXPECT_THROW(cli::parse_grid_spec("1:10:0:log"), ValidationError);
  EXPECT_THROW(cli::parse_grid_spec("1:10:20"), ValidationError);
  EXPECT_THROW(cli::parse_grid_spec("a:10:20:log"), ValidationError);
}

TEST(Cli, AnalyzeComb) {
  cli::AnalysisConfig config;
  config.input = to_json(comb_example(1)).dump();
  std::ostringstream out;
  cli::cmd_analyze(config, out);
  const auto j = Json::parse(out.str());
  EXPECT_EQ(j["crest_count"], 5);
  EXPECT_EQ(j["certificate"]["crest_lower_bound"], 2);
  EXPECT_EQ(j["certificate"]["root_lower_bound"], 1);
  EXPECT_EQ(j["certificate"]["derived_root_bound"], 3);
  EXPECT_EQ(j["comb"]["comb_N"], 1);
}

TEST(Cli, AnalyzeBox) {
  cli::AnalysisConfig config;
  config.input = R"({"type":"step","breakpoints":[0,1],"values":[1]})";
  std::ostringstream out;
  cli::cmd_analyze(config, out);
  const auto j = Json::parse(out.str());
  EXPECT_EQ(j["crest_count"], 1);
  EXPECT_LT(j["certificate"]["best_q"].get<double>(), 1.0);
  EXPECT_FALSE(j.contains("comb"));
}

TEST(Cli, CombReportsBothEvaluationPoints) {
  std::ostringstream out;
  const double pi = std::numbers::pi;
  cli::cmd_comb(1, {pi, 2 * pi, 3 * pi}, {1, 50}, out);
  const auto j = Json::parse(out.str());
  EXPECT_NEAR(j["requested"][0]["abs_fhat"].get<double>(), 10 / pi, 1e-13);
  EXPECT_NEAR(j["requested"][1]["abs_fhat"].get<double>(), 0.0, 1e-13);
  EXPECT_NEAR(j["requested"][2]["abs_fhat"].get<double>(), 10 / (3 * pi), 1e-13);
  EXPECT_NEAR(j["stated_points"][1]["abs_fhat"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["corrected_points"][1]["q"].get<double>(), std::sqrt(10.0) / pi, 1e-9);
  EXPECT_TRUE(j.contains("erratum"));
  std::ostringstream two;
  cli::cmd_comb(2, {5 * pi}, {}, two);
  EXPECT_NEAR(Json::parse(two.str())["requested"][0]["abs_fhat"].get<double>(), 4 / pi, 1e-13);
  std::ostringstream none;
  EXPECT_THROW(cli::cmd_comb(0, {}, {}, none), ValidationError);
}

TEST(Cli, Rearrange) {
  auto run = [](const Function& f) {
    std::ostringstream out;
    cli::cmd_rearrange(to_json(f).dump(), out);
    return parse_function(out.str());
  };
  EXPECT_EQ(run(comb_example(1)), Function(box(0, 5)));
  EXPECT_EQ(run(make_linear({0, 1, 2}, {0, 1, 0})), Function(make_linear({0, 2}, {1, 0})));
  EXPECT_EQ(run(box(2, 3)), Function(box(0, 1)));
  const Function star = run(make_step({0, 1, 3, 4}, {1, 3, 2}));
  EXPECT_EQ(run(star), star);
}

TEST(Cli, HardyRejectsNonDecreasing) {
  std::ostringstream out;
  const std::string chi = to_json(box(0, 1)).dump();
  const std::string rising = to_json(make_step({0, 1, 2}, {1, 2})).dump();
  const std::string msg = message_of([&] { cli::cmd_hardy(rising, chi, chi, 2.0, 2.0, out); });
  EXPECT_NE(msg.find("nonincreasing"), std::string::npos);
  EXPECT_THROW(cli::cmd_hardy(chi, chi, chi, 0.0, 2.0, out), ValidationError);
  const auto r = cli::cmd_hardy(chi, chi, chi, 2.0, 2.0, out);
  EXPECT_TRUE(r.chain_holds);
}

TEST(Cli, BoundRootsNeedsLinearInput) {
  cli::AnalysisConfig config;
  config.input = to_json(box(0, 1)).dump();
  std::ostringstream out;
  EXPECT_THROW(cli::cmd_bound_roots(config, out), ValidationError);
  config.input = to_json(make_linear({0, 1, 2}, {0, 1, 0})).dump();
  const auto cert = cli::cmd_bound_roots(config, out);
  EXPECT_FALSE(cert.nontrivial());
  EXPECT_NE(out.str().find("no nontrivial certificate"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  std::ostringstream a;
  std::ostringstream b;
  cli::cmd_verify(Family::step, 20, 9, a);
  cli::cmd_verify(Family::step, 20, 9, b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  cli::cmd_verify(Family::step, 20, 10, c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Cli, ExitCodes) {
  std::ostringstream err;
  EXPECT_EQ(cli::run_command([] {}, err), cli::kSuccess);
  EXPECT_EQ(cli::run_command([] { make_step({0, 1}, {-1}); }, err), cli::kValidation);
  EXPECT_EQ(cli::run_command([] { throw ConvergenceError("stuck"); }, err), cli::kConvergence);
  EXPECT_NE(err.str().find("stuck"), std::string::npos);
}
