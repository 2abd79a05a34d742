#include "tsosc/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "tsosc/error.hpp"
#include "tsosc/monomials.hpp"

namespace tsosc {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::NotSatisfied: return "not-satisfied";
    case Verdict::InconclusiveWindow: return "inconclusive-window";
  }
  return "inconclusive-window";
}

std::string_view to_string(Divergence d) noexcept {
  return d == Divergence::DivergesLikely ? "diverges-likely" : "inconclusive";
}

std::string_view to_string(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::AllSolutionsOscillate: return "AllSolutionsOscillate";
    case Conclusion::OscillateOrTendToZero: return "OscillateOrTendToZero";
    case Conclusion::UnboundedSolutionsOscillate: return "UnboundedSolutionsOscillate";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// p(eta) = [1 - A(beta(eta))] B(eta) h_{n-1}(beta(eta), t0) on local indices;
// zero where beta(eta) precedes t0 (never read by a valid window).
std::vector<double> criterion_density(const NeutralEquationSpec& spec, const SampledEquation& eq, bool neutral) {
  const auto& w = eq.window;
  const MonomialTable h(w, 0, spec.n - 1, Varying::First);
  std::vector<double> p(w.size(), 0.0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto b = eq.beta_local(j);
    if (b < 0) continue;
    const auto bj = static_cast<std::size_t>(b);
    const double factor = neutral ? 1.0 - eq.A[bj] : 1.0;
    p[j] = factor * eq.B[j] * h(spec.n - 1, bj);
  }
  return p;
}

// Local indices t with beta(beta(t)) >= t0 and a forward neighbour, so that
// every eta in [beta(t), sigma(t)) has beta(eta) >= t0.
std::vector<std::size_t> evaluation_points(const SampledEquation& eq) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < eq.window.size(); ++i) {
    const auto b = eq.beta_local(i);
    if (b < 0 || eq.beta_local(static_cast<std::size_t>(b)) < 0) continue;
    out.push_back(i);
  }
  return out;
}

double tail_estimate(const std::vector<TracePoint>& trace, std::size_t count, bool lower) {
  const std::size_t tail = std::max<std::size_t>(1, count / 4);
  double e = trace[count - tail].value;
  for (std::size_t i = count - tail; i < count; ++i) e = lower ? std::min(e, trace[i].value) : std::max(e, trace[i].value);
  return e;
}

void settle(CriterionReport& r) {
  if (r.trace.empty()) {
    r.verdict = Verdict::InconclusiveWindow;
    r.tail_estimate = std::numeric_limits<double>::quiet_NaN();
    r.notes.push_back("no evaluation point has beta(beta(t)) >= t0 inside the window");
    return;
  }
  const std::size_t M = r.trace.size();
  r.prefix_estimates.clear();
  for (std::size_t count : {(M + 1) / 2, (3 * M + 3) / 4, M})
    r.prefix_estimates.push_back(tail_estimate(r.trace, std::max<std::size_t>(1, count), r.lower));
  r.tail_estimate = r.prefix_estimates.back();

  const auto& e = r.prefix_estimates;
  r.stable = true;
  bool rising = true;
  bool falling = true;
  for (std::size_t k = 1; k < e.size(); ++k) {
    const double scale = std::max(std::abs(e[k]), std::abs(e[k - 1]));
    if (std::abs(e[k] - e[k - 1]) >= 0.01 * scale && scale > 0.0) r.stable = false;
    rising = rising && e[k] >= e[k - 1];
    falling = falling && e[k] <= e[k - 1];
  }
  const double above = r.threshold * (1.0 + r.margin);
  const double below = r.threshold * (1.0 - r.margin);
  const bool all_above = std::all_of(e.begin(), e.end(), [&](double v) { return v > above; });
  const bool all_below = std::all_of(e.begin(), e.end(), [&](double v) { return v < below; });
  // A trace still growing past the threshold (or still shrinking below it)
  // only moves further from the boundary as the window grows.
  if (all_above && (r.stable || rising))
    r.verdict = Verdict::Satisfied;
  else if (all_below && (r.stable || falling))
    r.verdict = Verdict::NotSatisfied;
  else
    r.verdict = Verdict::InconclusiveWindow;
  if (!r.stable) r.notes.push_back("tail estimate changed by 1% or more across window enlargements");
}

void check_window(const NeutralEquationSpec& spec, const SampledEquation& eq, const char* where) {
  if (spec.n < 1) fail(Errc::BadOrder, where, "order n must be at least 1");
  if (eq.window.size() < 2) fail(Errc::WindowTooShort, where, "window needs at least 2 points");
}

// -ln(lambda) - sum ln(1 - lambda a_j): the log of 1/(lambda e_{-lambda p}).
double log_inner(double lambda, const std::vector<double>& a) {
  double g = -std::log(lambda);
  for (double v : a) g -= std::log1p(-lambda * v);
  return g;
}

}  // namespace

DivergenceReport divergence_check(const NeutralEquationSpec& spec, const SampledEquation& eq) {
  check_window(spec, eq, "oscillation::divergence_check");
  const auto& w = eq.window;
  const std::size_t N = w.size();
  const MonomialTable h(w, 0, spec.n - 1, Varying::Second);
  DivergenceReport r;
  std::vector<double> partial(N, 0.0);  // partial[k]: sum over the first k intervals
  for (std::size_t j = 0; j + 1 < N; ++j) partial[j + 1] = partial[j] + w.mu(j) * eq.B[j] * h(spec.n - 1, j + 1);
  const std::size_t intervals = N - 1;
  for (std::size_t k : {intervals / 4, intervals / 2, intervals}) r.partial_sums.push_back(partial[k]);

  const double s1 = std::abs(r.partial_sums[0]);
  const double s2 = std::abs(r.partial_sums[1]);
  const double s3 = std::abs(r.partial_sums[2]);
  if (s1 > 0.0 && s2 >= 1.5 * s1 && s3 >= 1.5 * s2) r.verdict = Divergence::DivergesLikely;
  if (spec.n % 2 == 0 && spec.n > 1)
    r.notes.push_back("h_{n-1}(t0, sigma(eta)) is negative for even n; magnitudes of the signed sums are compared");
  if (intervals < 4) r.notes.push_back("window too short for three doublings");
  return r;
}

CriterionReport criterion_exponential(const NeutralEquationSpec& spec, const SampledEquation& eq, const LambdaGrid& grid,
                                      bool neutral_variant, double margin) {
  constexpr const char* where = "oscillation::criterion_exponential";
  if (grid.count == 0 || !(grid.min > 0.0) || !(grid.max >= grid.min) || !std::isfinite(grid.max))
    fail(Errc::EmptyLambdaGrid, where, "lambda grid must hold at least one positive value");
  check_window(spec, eq, where);

  std::vector<double> lambdas(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    const double frac = grid.count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(grid.count - 1);
    lambdas[k] = grid.min * std::pow(grid.max / grid.min, frac);
  }

  CriterionReport r;
  r.id = "exponential";
  r.neutral_variant = neutral_variant;
  r.lower = true;
  r.threshold = 1.0;
  r.margin = margin;

  const auto& w = eq.window;
  const auto p = criterion_density(spec, eq, neutral_variant);
  std::vector<double> a;
  for (std::size_t i : evaluation_points(eq)) {
    const auto b = static_cast<std::size_t>(eq.beta_local(i));
    a.clear();
    double amax = 0.0;
    for (std::size_t j = b; j < i; ++j) {
      a.push_back(w.mu(j) * p[j]);
      amax = std::max(amax, a.back());
    }
    const auto regressive = [&](double lam) { return lam * amax < 1.0; };

    std::optional<std::size_t> best;
    double best_g = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (!regressive(lambdas[k])) continue;
      const double g = log_inner(lambdas[k], a);
      if (g < best_g) {
        best_g = g;
        best = k;
      }
    }
    if (!best) {
      r.nonregressive_t.push_back(w.point(i));
      continue;
    }
    // golden-section refinement between the grid neighbours, kept regressive
    double lo = *best > 0 ? lambdas[*best - 1] : lambdas[*best];
    double hi = *best + 1 < lambdas.size() ? lambdas[*best + 1] : lambdas[*best];
    if (amax > 0.0) hi = std::min(hi, std::nextafter(1.0 / amax, 0.0));
    if (hi > lo) {
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - phi * (hi - lo);
      double x2 = lo + phi * (hi - lo);
      double g1 = log_inner(x1, a);
      double g2 = log_inner(x2, a);
      for (int it = 0; it < 80 && hi - lo > 1e-14 * hi; ++it) {
        if (g1 < g2) {
          hi = x2;
          x2 = x1;
          g2 = g1;
          x1 = hi - phi * (hi - lo);
          g1 = log_inner(x1, a);
        } else {
          lo = x1;
          x1 = x2;
          g1 = g2;
          x2 = lo + phi * (hi - lo);
          g2 = log_inner(x2, a);
        }
      }
      best_g = std::min({best_g, g1, g2});
    }
    r.trace.push_back({w.point(i), std::exp(best_g), w.point(b), w.point(i)});
  }
  if (!r.nonregressive_t.empty())
    r.notes.push_back(std::string(to_string(Errc::AllLambdaNonRegressive)) + " at " +
                      std::to_string(r.nonregressive_t.size()) + " points; excluded from the tail");
  settle(r);
  return r;
}

WindowsReport criterion_windows(const NeutralEquationSpec& spec, const SampledEquation& eq, double gamma,
                                bool neutral_variant, double margin) {
  constexpr const char* where = "oscillation::criterion_windows";
  if (!(gamma > 0.0 && gamma < 1.0)) fail(Errc::BadGamma, where, "gamma must lie in (0, 1)");
  check_window(spec, eq, where);

  const auto& w = eq.window;
  const auto p = criterion_density(spec, eq, neutral_variant);
  std::vector<double> Q(w.size(), 0.0);
  for (std::size_t j = 0; j + 1 < w.size(); ++j) Q[j + 1] = Q[j] + w.mu(j) * p[j];

  WindowsReport out;
  out.gamma = gamma;
  auto& lo = out.liminf;
  auto& hi = out.limsup;
  lo.id = "liminf";
  hi.id = "limsup";
  lo.lower = true;
  hi.lower = false;
  lo.neutral_variant = hi.neutral_variant = neutral_variant;
  lo.margin = hi.margin = margin;
  lo.threshold = gamma;
  const double root = 1.0 - std::sqrt(1.0 - gamma);
  hi.threshold = 1.0 - root * root;

  for (std::size_t i : evaluation_points(eq)) {
    const auto b = static_cast<std::size_t>(eq.beta_local(i));
    lo.trace.push_back({w.point(i), Q[i] - Q[b], w.point(b), w.point(i)});
    hi.trace.push_back({w.point(i), Q[i + 1] - Q[b], w.point(b), w.point(i + 1)});
  }
  settle(lo);
  settle(hi);
  if (lo.verdict == Verdict::Satisfied && hi.verdict == Verdict::Satisfied)
    out.verdict = Verdict::Satisfied;
  else if (lo.verdict == Verdict::NotSatisfied || hi.verdict == Verdict::NotSatisfied)
    out.verdict = Verdict::NotSatisfied;
  else
    out.verdict = Verdict::InconclusiveWindow;
  return out;
}

namespace {

double param(const std::map<std::string, double>& params, const char* key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int order_param(const std::map<std::string, double>& params, double fallback, const char* where) {
  const double n = param(params, "n", fallback);
  if (n < 1.0 || n != std::floor(n)) fail(Errc::InvalidArgument, where, "n must be a positive integer");
  return static_cast<int>(n);
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

}  // namespace

double continuous_crossover(int n) {
  if (n < 2) fail(Errc::InvalidArgument, "oscillation::continuous_crossover", "needs n >= 2");
  // b0 needed by the first test is c/(e ln beta0), by the second c(n-1)/4
  return std::exp(4.0 / (std::exp(1.0) * static_cast<double>(n - 1)));
}

ThresholdResult threshold_closed_form(std::string_view example, const std::map<std::string, double>& params) {
  constexpr const char* where = "oscillation::threshold_closed_form";
  ThresholdResult r;
  r.example = std::string(example);
  if (example == "q-difference") {
    const double q = param(params, "q", 2.0);
    const int n = order_param(params, 2.0, where);
    const double b0 = param(params, "b0", 1.0);
    const double beta0 = param(params, "beta0", 1.0);
    if (!(q > 1.0)) fail(Errc::InvalidArgument, where, "q must exceed 1");
    if (beta0 < 1.0 || beta0 != std::floor(beta0)) fail(Errc::InvalidArgument, where, "beta0 must be a positive integer");
    r.lhs = (q - 1.0) * b0 * beta0 / (std::pow(q, beta0 * (n - 1)) * q_gamma(q, n));
    r.rhs = std::pow(beta0 / (beta0 + 1.0), beta0 + 1.0);
    r.satisfied = r.lhs > r.rhs;
    r.extra["liminf_asymptote"] = r.lhs;
  } else if (example == "difference") {
    const int n = order_param(params, 2.0, where);
    const double a0 = param(params, "a0", 0.5);
    const double b0 = param(params, "b0", 1.0);
    const double beta0 = param(params, "beta0", 1.0);
    const double p = param(params, "p", static_cast<double>(n - 1));
    if (a0 < 0.0 || a0 >= 1.0) fail(Errc::InvalidArgument, where, "a0 must lie in [0, 1)");
    if (beta0 < 1.0 || beta0 != std::floor(beta0)) fail(Errc::InvalidArgument, where, "beta0 must be a positive integer");
    if (n % 2 != 0) r.notes.push_back("the difference example is stated for even n");
    r.rhs = std::pow(beta0, beta0) / (std::pow(beta0 + 1.0, beta0 + 1.0) * factorial(n - 1));
    if (p < n - 1) {
      r.lhs = std::numeric_limits<double>::infinity();
      r.satisfied = true;
      r.notes.push_back("p < n - 1: the window integral grows without bound");
    } else if (p > n - 1) {
      r.lhs = 0.0;
      r.satisfied = false;
      r.notes.push_back("p > n - 1: the window integral tends to zero");
    } else {
      r.lhs = b0 * (1.0 - a0);
      r.satisfied = r.lhs > r.rhs;
    }
  } else if (example == "continuous") {
    const int n = order_param(params, 4.0, where);
    const double b0 = param(params, "b0", 1.0);
    const double beta0 = param(params, "beta0", 2.0);
    if (n < 2) fail(Errc::InvalidArgument, where, "the continuous example needs n >= 2");
    if (!(beta0 > 1.0)) fail(Errc::InvalidArgument, where, "beta0 must exceed 1");
    const double denom = std::pow(beta0, n - 1) * factorial(n - 1);
    r.lhs = b0 * std::log(beta0) / denom;
    r.rhs = 1.0 / std::exp(1.0);
    r.satisfied = r.lhs > r.rhs;
    r.extra["comparison_lhs"] = b0 / (denom * (n - 1));
    r.extra["comparison_rhs"] = 0.25;
    r.extra["beta0_crossover"] = continuous_crossover(n);
  } else {
    fail(Errc::UnknownExample, where, "unknown example '" + std::string(example) + "'");
  }
  return r;
}

bool criterion_holds(const CriterionReport& exponential, const WindowsReport& windows) {
  return exponential.verdict == Verdict::Satisfied || windows.verdict == Verdict::Satisfied;
}

ConclusionReport conclude(const NeutralEquationSpec& spec, const CriterionEvidence& evidence, Divergence divergence) {
  ConclusionReport r;
  const bool even = spec.n % 2 == 0;
  const bool diverges = divergence == Divergence::DivergesLikely;
  const bool r1_like = spec.range == RangeTag::R1 || spec.range == RangeTag::None;
  const bool criterion = spec.range == RangeTag::R1 ? evidence.neutral_satisfied : evidence.nonneutral_satisfied;

  if (r1_like && even && criterion) {
    r.conclusion = Conclusion::AllSolutionsOscillate;
    r.basis = spec.range == RangeTag::R1 ? "even order, range R1" : "even order, nonneutral";
  } else if (r1_like && !even && criterion && diverges) {
    r.conclusion = Conclusion::OscillateOrTendToZero;
    r.basis = "odd order with divergent integral";
  } else if (r1_like && !even && criterion) {
    r.conclusion = Conclusion::UnboundedSolutionsOscillate;
    r.basis = "odd order without established divergence";
  } else if (spec.range == RangeTag::R2 && diverges && evidence.nonneutral_satisfied) {
    r.conclusion = Conclusion::OscillateOrTendToZero;
    r.basis = "range R2 with divergent integral";
  } else {
    r.conclusion = Conclusion::Inconclusive;
    r.basis = "sufficient conditions not met on this window";
  }
  if (spec.range == RangeTag::R1 && even)
    r.notes.push_back(
        "the even-order corollary concludes for the neutral equation while its theorem treats the nonneutral one; "
        "the criterion was read with the [1 - A(beta)] factor");
  if (spec.range == RangeTag::R2 && !evidence.nonneutral_satisfied && evidence.neutral_satisfied)
    r.notes.push_back("range R2 uses the criterion without the [1 - A(beta)] factor");
  return r;
}

}  // namespace tsosc
