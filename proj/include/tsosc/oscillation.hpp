#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tsosc/equation.hpp"

namespace tsosc {

enum class Verdict { Satisfied, NotSatisfied, InconclusiveWindow };
enum class Divergence { DivergesLikely, Inconclusive };
enum class Conclusion { AllSolutionsOscillate, OscillateOrTendToZero, UnboundedSolutionsOscillate, Inconclusive };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(Divergence d) noexcept;
std::string_view to_string(Conclusion c) noexcept;

inline constexpr double kDefaultMargin = 1e-3;
inline constexpr double kDefaultGamma = 0.25;

// One evaluated criterion quantity at t, integrated over [window_lo, window_hi).
struct TracePoint {
  double t;
  double value;
  double window_lo;
  double window_hi;
};

struct CriterionReport {
  std::string id;  // "liminf", "limsup" or "exponential"
  bool neutral_variant = false;
  bool lower = true;  // liminf-type (tail minimum) or limsup-type (tail maximum)
  std::vector<TracePoint> trace;
  double tail_estimate = 0.0;
  double threshold = 0.0;
  double margin = kDefaultMargin;
  // Tail estimates on the first 50%, 75% and 100% of the trace.
  std::vector<double> prefix_estimates;
  bool stable = false;
  Verdict verdict = Verdict::InconclusiveWindow;
  std::vector<double> nonregressive_t;  // exponential: points with no admissible lambda
  std::vector<std::string> notes;
};

struct WindowsReport {
  double gamma = kDefaultGamma;
  CriterionReport liminf;
  CriterionReport limsup;
  Verdict verdict = Verdict::InconclusiveWindow;  // both parts satisfied
};

struct LambdaGrid {
  double min = 1e-4;
  double max = 1e2;
  std::size_t count = 200;
};

struct DivergenceReport {
  Divergence verdict = Divergence::Inconclusive;
  std::vector<double> partial_sums;  // signed sums after N/4, N/2 and N points
  std::vector<std::string> notes;
};

// Partial sums of int_{t0} B(eta) h_{n-1}(t0, sigma(eta)) Delta eta over the
// window; diverges-likely when |S| grows by >= 1.5x from N/4 to N/2 to N.
DivergenceReport divergence_check(const NeutralEquationSpec& spec, const SampledEquation& eq);

// liminf of inf over lambda of 1 / (lambda e_{-lambda p}(t, beta(t))) with
// p = [1 - A(beta)] B h_{n-1}(beta, t0) (neutral) or B h_{n-1}(beta, t0).
CriterionReport criterion_exponential(const NeutralEquationSpec& spec, const SampledEquation& eq,
                                      const LambdaGrid& grid, bool neutral_variant,
                                      double margin = kDefaultMargin);

// liminf of int_{beta(t)}^{t} p and limsup of int_{beta(t)}^{sigma(t)} p
// against gamma and 1 - (1 - sqrt(1 - gamma))^2.
WindowsReport criterion_windows(const NeutralEquationSpec& spec, const SampledEquation& eq, double gamma,
                                bool neutral_variant, double margin = kDefaultMargin);

struct ThresholdResult {
  std::string example;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  std::map<std::string, double> extra;
  std::vector<std::string> notes;
};

// Closed-form tests of the worked examples: "q-difference", "difference",
// "continuous". Missing parameters take the examples' default values.
ThresholdResult threshold_closed_form(std::string_view example, const std::map<std::string, double>& params);

// beta0 above which the continuous example's logarithmic test needs a smaller
// b0 than b0/(beta0^{n-1}(n-1)!(n-1)) > 1/4.
double continuous_crossover(int n);

struct CriterionEvidence {
  bool neutral_satisfied = false;     // criterion with the [1 - A(beta)] factor
  bool nonneutral_satisfied = false;  // criterion without it
};

struct ConclusionReport {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string basis;
  std::vector<std::string> notes;
};

ConclusionReport conclude(const NeutralEquationSpec& spec, const CriterionEvidence& evidence, Divergence divergence);

// Either test of a corollary holds: the exponential test or both window tests.
bool criterion_holds(const CriterionReport& exponential, const WindowsReport& windows);

}  // namespace tsosc
