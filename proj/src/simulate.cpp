#include "tsosc/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

constexpr const char* kStep = "simulate::step_ivp";

std::int64_t delay_index(const TimeScale& ts, double v, std::int64_t first, std::size_t& snapped) {
  const auto k = ts.floor_index(v);
  if (!k || *k < first)
    fail(Errc::HistoryGap, kStep, "delay value " + std::to_string(v) + " precedes the initial function");
  if (!ts.try_index_of(v)) ++snapped;
  return *k;
}

// Weights w[j] with f^{Delta^n}(t_0) = sum_j w[j] f(t_j) over pts t_0..t_n,
// composed from first-order deltas.
std::vector<double> stencil(const std::vector<double>& pts) {
  const std::size_t n = pts.size() - 1;
  // rows[r] holds the weights of f^{Delta^k}(t_r) over t_r..t_{r+k}
  std::vector<std::vector<double>> rows(n + 1, std::vector<double>{1.0});
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t r = 0; r + k <= n; ++r) {
      const double mu = pts[r + 1] - pts[r];
      std::vector<double> w(k + 1, 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        w[j] -= rows[r][j] / mu;
        w[j + 1] += rows[r + 1][j] / mu;
      }
      rows[r] = std::move(w);
    }
  }
  return rows[0];
}

}  // namespace

std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::TendsToZero: return "tends-to-zero";
    case Trend::BoundedAway: return "bounded-away";
    case Trend::Unbounded: return "unbounded";
    case Trend::Undetermined: return "undetermined";
  }
  return "undetermined";
}

InitialData constant_history(const NeutralEquationSpec& spec, double value) {
  const auto& ts = spec.scale;
  const auto k0 = ts.try_index_of(spec.t0);
  if (!k0) fail(Errc::InvalidArgument, "simulate::constant_history", "t0 is not a scale point");
  const auto a = ts.floor_index(spec.alpha(spec.t0));
  const auto b = ts.floor_index(spec.beta(spec.t0));
  if (!a || !b) fail(Errc::HistoryGap, "simulate::constant_history", "delays at t0 fall below the time scale");
  const auto first = std::min({*a, *b, *k0});
  const auto last = *k0 + spec.n - 1;
  GridWindow w(ts, first, last);
  return {GridFn(w, std::vector<double>(w.size(), value))};
}

SolutionTrace step_ivp(const NeutralEquationSpec& spec, const InitialData& init, std::size_t horizon,
                       const StepOptions& options) {
  const auto& ts = spec.scale;
  if (ts.approximates_real() && !options.allow_fine_grid)
    fail(Errc::NonDiscreteScale, kStep, "scale approximates the real line; fine-grid stepping was not requested");
  if (spec.n < 1) fail(Errc::BadOrder, kStep, "order n must be at least 1");
  if (horizon < 1) fail(Errc::InvalidArgument, kStep, "horizon must be at least 1");
  const auto k0_opt = ts.try_index_of(spec.t0);
  if (!k0_opt) fail(Errc::InvalidArgument, kStep, "t0 is not a scale point");
  const std::int64_t k0 = *k0_opt;
  const auto& pw = init.phi.window();
  if (!(pw.scale() == ts)) fail(Errc::InvalidArgument, kStep, "initial function lives on a different scale");
  const std::int64_t first = pw.start_index();
  const std::int64_t seeded = k0 + spec.n - 1;
  if (first > k0 || pw.end_index() < seeded)
    fail(Errc::HistoryGap, kStep, "initial function must cover t0 and its first n - 1 successors");
  const std::int64_t last = std::max<std::int64_t>(k0 + static_cast<std::int64_t>(horizon) - 1, seeded);
  if (!ts.has_index(last)) fail(Errc::InvalidArgument, kStep, "horizon runs past the end of the time scale");

  const GridWindow xw(ts, first, last);
  const auto N = static_cast<std::size_t>(last - first + 1);
  const auto off = [&](std::int64_t k) { return static_cast<std::size_t>(k - first); };
  std::vector<double> x(N, 0.0);
  std::vector<double> z(static_cast<std::size_t>(last - k0 + 1), 0.0);
  for (std::int64_t k = first; k <= std::min(seeded, pw.end_index()); ++k) x[off(k)] = init.phi.values()[off(k)];

  std::size_t snapped = 0;
  std::vector<std::int64_t> alpha(N, 0);
  for (std::int64_t k = k0; k <= last; ++k)
    alpha[off(k)] = delay_index(ts, spec.alpha(xw.point(off(k))), first, snapped);
  const auto composite = [&](std::int64_t k) {
    const double t = xw.point(off(k));
    return x[off(k)] + spec.A(t) * x[off(alpha[off(k)])];
  };
  for (std::int64_t k = k0; k <= seeded; ++k) z[static_cast<std::size_t>(k - k0)] = composite(k);

  const int n = spec.n;
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = k0; k + n <= last; ++k) {
    for (int j = 0; j <= n; ++j) pts[static_cast<std::size_t>(j)] = xw.point(off(k + j));
    const auto w = stencil(pts);
    const double t = pts[0];
    const auto b = delay_index(ts, spec.beta(t), first, snapped);
    if (b > k + n - 1) fail(Errc::HistoryGap, kStep, "beta(t) > t");
    double rhs = -spec.B(t) * x[off(b)];
    for (int j = 0; j < n; ++j) rhs -= w[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(k + j - k0)];
    const std::int64_t kn = k + n;
    const double zn = rhs / w[static_cast<std::size_t>(n)];
    z[static_cast<std::size_t>(kn - k0)] = zn;
    const double a = spec.A(xw.point(off(kn)));
    const auto ak = alpha[off(kn)];
    if (ak > kn) fail(Errc::HistoryGap, kStep, "alpha(t) > t");
    x[off(kn)] = ak == kn ? zn / (1.0 + a) : zn - a * x[off(ak)];
  }

  const GridWindow zw(ts, k0, last);
  GridFn after(zw, std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(off(k0)), x.end()));
  SolutionTrace out{GridFn(xw, std::move(x)), GridFn(zw, std::move(z)), sign_changes(after).indices,
                    Trend::Undetermined, snapped};
  if (after.size() >= 100) out.trend = asymptotic_trend(after);
  return out;
}

SignChanges sign_changes(const GridFn& x, std::size_t from_index) {
  SignChanges r;
  double running = 0.0;
  int prev = 0;
  for (std::size_t i = from_index; i < x.size(); ++i) {
    const double v = x[i];
    running = std::max(running, std::abs(v));
    if (std::abs(v) <= kZeroTolerance * running) continue;
    const int s = v > 0 ? 1 : -1;
    if (prev != 0 && s != prev) {
      ++r.count;
      r.last_index = i;
      r.indices.push_back(i);
    }
    prev = s;
  }
  return r;
}

Trend asymptotic_trend(const GridFn& x) {
  const std::size_t N = x.size();
  if (N < 100) fail(Errc::WindowTooShort, "simulate::asymptotic_trend", "needs at least 100 samples");
  std::vector<double> mag(N);
  for (std::size_t i = 0; i < N; ++i) mag[i] = std::abs(x[i]);
  const double global = *std::max_element(mag.begin(), mag.end());
  if (global == 0.0) return Trend::TendsToZero;
  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(N / 2), sorted.end());
  const double median = sorted[N / 2];

  double qmax[4];
  for (int q = 0; q < 4; ++q) {
    const std::size_t lo = N * static_cast<std::size_t>(q) / 4;
    const std::size_t hi = N * static_cast<std::size_t>(q + 1) / 4;
    qmax[q] = *std::max_element(mag.begin() + static_cast<std::ptrdiff_t>(lo), mag.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  const bool decreasing = qmax[1] <= qmax[0] && qmax[2] <= qmax[1] && qmax[3] < qmax[2];
  const bool increasing = qmax[1] > qmax[0] && qmax[2] > qmax[1] && qmax[3] > qmax[2];
  if (qmax[3] < 1e-3 * global && decreasing) return Trend::TendsToZero;
  if (increasing && qmax[3] >= 10.0 * median) return Trend::Unbounded;
  // steady growth: the last quarter still gains at least half the previous step
  if (increasing && qmax[3] - qmax[2] >= 0.5 * (qmax[2] - qmax[1])) return Trend::Unbounded;

  const std::size_t tail = N - N / 4;
  const double tail_min = *std::min_element(mag.begin() + static_cast<std::ptrdiff_t>(tail), mag.end());
  if (tail_min >= 1e-3 * global && sign_changes(x, tail).count == 0) return Trend::BoundedAway;
  return Trend::Undetermined;
}

namespace {

std::size_t default_horizon(std::string_view id) {
  if (id == "q-difference") return 200;
  if (id == "difference") return 5000;
  return 20000;
}

std::size_t default_criterion_points(std::string_view id) {
  if (id == "q-difference") return 41;
  if (id == "difference") return 2000;
  return 20000;
}

}  // namespace

ExampleReport reproduce_example(std::string_view id, const Params& params, const ReproduceOptions& options) {
  ExampleReport r;
  r.example = std::string(id);
  r.params = example_params(id, params);
  r.spec = example_spec(id, r.params);
  r.threshold = threshold_closed_form(id, r.params);

  const bool continuous = id == "continuous";
  if (!continuous || options.simulate_continuous) {
    r.criteria_run = true;
    r.criterion_points = options.criterion_points ? options.criterion_points : default_criterion_points(id);
    const auto eq = sample_equation(r.spec, r.criterion_points);
    validate(r.spec, eq);
    r.neutral_variant = r.spec.range == RangeTag::R1;
    const auto win_neutral = criterion_windows(r.spec, eq, options.gamma, true);
    const auto exp_neutral = criterion_exponential(r.spec, eq, options.lambda, true);
    const auto win_plain = criterion_windows(r.spec, eq, options.gamma, false);
    const auto exp_plain = criterion_exponential(r.spec, eq, options.lambda, false);
    r.evidence = {criterion_holds(exp_neutral, win_neutral), criterion_holds(exp_plain, win_plain)};
    r.windows = r.neutral_variant ? win_neutral : win_plain;
    r.exponential = r.neutral_variant ? exp_neutral : exp_plain;
    r.divergence = divergence_check(r.spec, eq);
    r.conclusion = conclude(r.spec, r.evidence, r.divergence.verdict);

    const std::size_t horizon = options.horizon ? options.horizon : default_horizon(id);
    auto trace = step_ivp(r.spec, constant_history(r.spec), horizon, {continuous});
    SimulationSummary s;
    s.horizon = horizon;
    s.t_end = trace.z.window().back();
    s.sign_changes = trace.sign_changes.size();
    if (!trace.sign_changes.empty()) s.last_change_index = trace.sign_changes.back();
    s.trend = trace.trend;
    s.snapped = trace.snapped;
    r.simulation = s;
    r.trace = std::move(trace);
  } else {
    r.conclusion.basis = "closed-form comparison only; fine-grid run not requested";
  }
  return r;
}

}  // namespace tsosc
