#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsosc/equation.hpp"
#include "tsosc/examples.hpp"
#include "tsosc/oscillation.hpp"

namespace tsosc {

// Equation config, a JSON object (every key optional):
//
//   {
//     "n": 2,
//     "scale": {"type": "geometric", "q": 2, "t0": 1},
//     "A": "0", "B": "b0/t^2", "alpha": "t", "beta": "t/2",
//     "range": "none",
//     "params": {"b0": 1},
//     "window": 41, "horizon": 200,
//     "gamma": 0.25, "margin": 0.001,
//     "lambda": {"min": 1e-4, "max": 100, "count": 200},
//     "history": 1.0
//   }
//
// Scales: {"type": "uniform", "h", "anchor", "fine"}, {"type": "geometric",
// "q", "anchor"} or {"type": "explicit", "points": [...]}; each takes "t0".
// "range" is inferred from A when absent. "history" is a constant or the
// list of values on [t_{-1}, sigma^{n-1}(t0)].
struct RunConfig {
  NeutralEquationSpec spec;
  std::size_t window = 200;
  std::size_t horizon = 200;
  double gamma = kDefaultGamma;
  double margin = kDefaultMargin;
  LambdaGrid lambda;
  std::vector<double> history{1.0};  // one value means a constant history
};

// Parses and validates. Malformed JSON and expressions raise ParseError;
// unknown keys, wrong types, out-of-range values and equation invariants
// raise ValidationError.
RunConfig parse_config(std::string_view text);

// JSON text that parse_config reads back to an equivalent config.
std::string render_config(const RunConfig& config);

// "uniform:h=1,t0=0", "geometric:q=2,t0=1" or "explicit:points=0;1;3,t0=0".
std::pair<TimeScale, double> parse_scale_arg(std::string_view text);

}  // namespace tsosc
