#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tsosc/calculus.hpp"
#include "tsosc/equation.hpp"
#include "tsosc/examples.hpp"
#include "tsosc/oscillation.hpp"

namespace tsosc {

// History phi on [t_{-1}, sigma^{n-1}(t0)], t_{-1} = min(alpha(t0), beta(t0)).
// The n - 1 forward values seed the order-n recurrence.
struct InitialData {
  GridFn phi;
};

// phi == value on exactly the points the stepper needs.
InitialData constant_history(const NeutralEquationSpec& spec, double value = 1.0);

enum class Trend { TendsToZero, BoundedAway, Unbounded, Undetermined };
std::string_view to_string(Trend t) noexcept;

struct SolutionTrace {
  GridFn x;  // from the start of phi to the last computed point
  GridFn z;  // x(t) + A(t) x(alpha(t)), from t0
  std::vector<std::size_t> sign_changes;  // indices into z's window
  Trend trend = Trend::Undetermined;
  std::size_t snapped = 0;  // delay values that were not scale points
};

struct StepOptions {
  bool allow_fine_grid = false;  // step scales flagged as approximating R
};

// Advances the equation `horizon` points from t0 (t0 included).
SolutionTrace step_ivp(const NeutralEquationSpec& spec, const InitialData& init, std::size_t horizon,
                       const StepOptions& options = {});

struct SignChanges {
  std::size_t count = 0;
  std::optional<std::size_t> last_index;
  std::vector<std::size_t> indices;
};

inline constexpr double kZeroTolerance = 1e-12;

// Strict alternations between samples with |x| > 1e-12 * running max.
SignChanges sign_changes(const GridFn& x, std::size_t from_index = 0);

Trend asymptotic_trend(const GridFn& x);

struct SimulationSummary {
  std::size_t horizon = 0;
  double t_end = 0.0;
  std::size_t sign_changes = 0;
  std::optional<std::size_t> last_change_index;
  Trend trend = Trend::Undetermined;
  std::size_t snapped = 0;
};

struct ReproduceOptions {
  std::size_t horizon = 0;           // simulation points; 0 picks the example's default
  std::size_t criterion_points = 0;  // criterion window; 0 picks the example's default
  double gamma = kDefaultGamma;
  LambdaGrid lambda;
  bool simulate_continuous = false;  // fine-grid run for the continuous example
};

struct ExampleReport {
  std::string example;
  Params params;
  NeutralEquationSpec spec;
  ThresholdResult threshold;
  bool criteria_run = false;
  std::size_t criterion_points = 0;
  bool neutral_variant = false;  // variant used for the dispatch
  WindowsReport windows;
  CriterionReport exponential;
  CriterionEvidence evidence;
  DivergenceReport divergence;
  ConclusionReport conclusion;
  std::optional<SimulationSummary> simulation;
  std::optional<SolutionTrace> trace;
};

ExampleReport reproduce_example(std::string_view id, const Params& params, const ReproduceOptions& options = {});

}  // namespace tsosc
