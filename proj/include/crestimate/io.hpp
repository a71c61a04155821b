#pragma once

// JSON and CSV formats.
//
// Functions:  {"type":"step","breakpoints":[...],"values":[...]}
//             {"type":"linear","nodes":[...],"node_values":[...]}
// Samples:    two CSV columns x,y with an optional header line.
// Q grids:    CSV columns z,abs_fhat,tail_integral,bound,q at 17 significant digits.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crestimate/bounds.hpp"
#include "crestimate/crests.hpp"
#include "crestimate/errors.hpp"
#include "crestimate/hardy.hpp"
#include "crestimate/piecewise.hpp"

namespace crestimate {

using Json = nlohmann::ordered_json;

/// %.17g: enough digits to round-trip every double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Json to_json(const StepFunction& f) {
  return Json{{"type", "step"},
              {"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())},
              {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

inline Json to_json(const PiecewiseLinearFunction& f) {
  return Json{{"type", "linear"},
              {"nodes", std::vector<double>(f.nodes().begin(), f.nodes().end())},
              {"node_values", std::vector<double>(f.node_values().begin(), f.node_values().end())}};
}

inline Json to_json(const Function& f) {
  return std::visit([](const auto& g) { return to_json(g); }, f);
}

namespace detail {

inline std::vector<double> number_array(const Json& j, const char* field) {
  if (!j.contains(field)) fail(ErrorKind::parse_error, std::string("missing field '") + field + "'");
  const Json& arr = j.at(field);
  if (!arr.is_array()) fail(ErrorKind::parse_error, std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      fail(ErrorKind::parse_error,
           std::string("field '") + field + "'[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace detail

inline Function function_from_json(const Json& j) {
  if (!j.is_object()) detail::fail(ErrorKind::parse_error, "function must be a JSON object");
  if (!j.contains("type")) detail::fail(ErrorKind::parse_error, "missing field 'type'");
  if (!j.at("type").is_string()) detail::fail(ErrorKind::parse_error, "field 'type' must be a string");
  const auto type = j.at("type").get<std::string>();
  if (type == "step") {
    return make_step(detail::number_array(j, "breakpoints"), detail::number_array(j, "values"));
  }
  if (type == "linear") {
    return make_linear(detail::number_array(j, "nodes"), detail::number_array(j, "node_values"));
  }
  detail::fail(ErrorKind::parse_error, "field 'type' must be \"step\" or \"linear\", got \"" + type + "\"");
}

inline Function parse_function(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::fail(ErrorKind::parse_error, e.what());
  }
  return function_from_json(j);
}

struct Samples {
  std::vector<double> x;
  std::vector<double> y;
};

/// Reads x,y rows. A first line whose first field is not numeric is a header.
inline Samples read_samples_csv(std::istream& in) {
  Samples s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    auto parse = [&](const std::string& field, double& out) {
      std::size_t used = 0;
      try {
        out = std::stod(field, &used);
      } catch (const std::exception&) {
        return false;
      }
      return field.find_first_not_of(" \t", used) == std::string::npos;
    };
    double x = 0.0;
    double y = 0.0;
    const std::string first = line.substr(0, comma);
    if (!parse(first, x)) {
      if (line_no == 1) continue;  // header
      detail::fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": column x is not a number");
    }
    if (comma == std::string::npos) {
      detail::fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected two columns x,y");
    }
    if (!parse(line.substr(comma + 1), y)) {
      detail::fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": column y is not a number");
    }
    s.x.push_back(x);
    s.y.push_back(y);
  }
  return s;
}

/// Loads a function from inline JSON (text starting with '{'), a .csv sample
/// file, or a JSON file.
inline Function load_function(const std::string& source, SampleMode mode = SampleMode::left_step) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_function(source);
  std::ifstream in(source);
  if (!in) detail::fail(ErrorKind::parse_error, "cannot open '" + source + "'");
  if (source.size() >= 4 && source.compare(source.size() - 4, 4, ".csv") == 0) {
    const Samples s = read_samples_csv(in);
    return from_samples(s.x, s.y, mode);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_function(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(e.kind(), source + ": " + e.what());
  }
}

inline Json to_json(const QReport& r) {
  return Json{{"z", r.z},
              {"abs_fhat", r.transform_magnitude},
              {"tail_integral", r.tail_integral},
              {"bound", r.theorem1_bound},
              {"q", r.q_value},
              {"crest_count", r.crest_count}};
}

inline Json to_json(const BoundCertificate& c, bool include_grid = true) {
  Json j{{"best_z", c.best_z},
         {"best_q", c.best_q},
         {"crest_count", c.crest_count},
         {"crest_lower_bound", c.crest_lower_bound},
         {"root_lower_bound", c.root_lower_bound},
         {"derived_root_bound", c.derived_root_bound},
         {"nontrivial", c.nontrivial()},
         {"grid_size", c.grid.size()}};
  if (include_grid) {
    Json grid = Json::array();
    for (const auto& r : c.grid) grid.push_back(to_json(r));
    j["grid"] = std::move(grid);
  }
  return j;
}

template <PiecewiseFunction F>
Json to_json(const CrestReport<F>& r) {
  return Json{{"count", r.count}, {"cut_points", r.cut_points}, {"crest_locations", r.crest_locations}};
}

inline Json to_json(const HardyReport& r) {
  return Json{{"fourier_weighted_norm", r.fourier_weighted_norm},
              {"hardy_middle", r.hardy_middle},
              {"lambda_rhs", r.lambda_rhs},
              {"chain_constant", r.chain_constant},
              {"p", r.p},
              {"q", r.q},
              {"fourier_error_estimate", r.fourier_error},
              {"hardy_error_estimate", r.hardy_error},
              {"chain_holds", r.chain_holds},
              {"hardy_ratio", r.hardy_ratio},
              {"implied_fourier_constant", r.implied_fourier_constant}};
}

inline void write_grid_csv(std::ostream& out, const std::vector<QReport>& grid) {
  out << "z,abs_fhat,tail_integral,bound,q\n";
  for (const auto& r : grid) {
    out << format_double(r.z) << ',' << format_double(r.transform_magnitude) << ','
        << format_double(r.tail_integral) << ',' << format_double(r.theorem1_bound) << ','
        << format_double(r.q_value) << '\n';
  }
}

}  // namespace crestimate
