#include "tsosc/equation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

constexpr const char* kWhere = "cli::validate";

std::string at(double t) {
  std::ostringstream os;
  os.precision(10);
  os << t;
  return os.str();
}

std::int64_t snap_index(const TimeScale& ts, double v, std::size_t& snapped, const char* what) {
  const auto k = ts.floor_index(v);
  if (!k) fail(Errc::ValidationError, kWhere, std::string(what) + " falls below the time scale at value " + at(v));
  if (!ts.try_index_of(v)) ++snapped;
  return *k;
}

}  // namespace

std::string_view to_string(RangeTag tag) noexcept {
  switch (tag) {
    case RangeTag::R1: return "R1";
    case RangeTag::R2: return "R2";
    case RangeTag::None: return "none";
  }
  return "none";
}

RangeTag range_from_string(std::string_view text) {
  if (text == "R1" || text == "r1") return RangeTag::R1;
  if (text == "R2" || text == "r2") return RangeTag::R2;
  if (text == "none") return RangeTag::None;
  fail(Errc::ValidationError, kWhere, "range must be R1, R2 or none, got '" + std::string(text) + "'");
}

std::ptrdiff_t SampledEquation::beta_local(std::size_t i) const {
  const auto k = beta_index[i] - window.start_index();
  return k < 0 ? -1 : static_cast<std::ptrdiff_t>(k);
}

SampledEquation sample_equation(const NeutralEquationSpec& spec, std::size_t points) {
  if (spec.n < 1) fail(Errc::ValidationError, kWhere, "order n must be at least 1");
  if (points < 2) fail(Errc::ValidationError, kWhere, "window needs at least 2 points");
  const auto k0 = spec.scale.try_index_of(spec.t0);
  if (!k0) fail(Errc::ValidationError, kWhere, "t0 = " + at(spec.t0) + " is not a point of the time scale");
  const auto last = *k0 + static_cast<std::int64_t>(points) - 1;
  if (!spec.scale.has_index(last)) fail(Errc::ValidationError, kWhere, "window runs past the end of the time scale");

  SampledEquation eq{GridWindow(spec.scale, *k0, last), {}, {}, {}, {}, 0};
  const std::size_t N = eq.window.size();
  eq.A.resize(N);
  eq.B.resize(N);
  eq.alpha_index.resize(N);
  eq.beta_index.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double t = eq.window.point(i);
    eq.A[i] = spec.A(t);
    eq.B[i] = spec.B(t);
    if (!std::isfinite(eq.A[i]) || !std::isfinite(eq.B[i]))
      fail(Errc::ValidationError, kWhere, "coefficient is not finite at t = " + at(t));
    const double a = spec.alpha(t);
    const double b = spec.beta(t);
    if (a > t) fail(Errc::ValidationError, kWhere, "alpha(t) > t at t = " + at(t));
    if (b > t) fail(Errc::ValidationError, kWhere, "beta(t) > t at t = " + at(t));
    eq.alpha_index[i] = snap_index(spec.scale, a, eq.snapped, "alpha(t)");
    eq.beta_index[i] = snap_index(spec.scale, b, eq.snapped, "beta(t)");
  }
  return eq;
}

RangeTag infer_range(const SampledEquation& eq) {
  const auto [lo, hi] = std::minmax_element(eq.A.begin(), eq.A.end());
  if (*lo == 0.0 && *hi == 0.0) return RangeTag::None;
  if (*lo >= 0.0) return RangeTag::R1;
  if (*hi <= 0.0) return RangeTag::R2;
  fail(Errc::ValidationError, kWhere, "A changes sign, so it lies in neither R1 nor R2");
}

void validate(const NeutralEquationSpec& spec, const SampledEquation& eq) {
  const auto& w = eq.window;
  const std::size_t N = w.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (eq.B[i] < 0.0) fail(Errc::ValidationError, kWhere, "B must be nonnegative; B < 0 at t = " + at(w.point(i)));
    if (i > 0 && eq.alpha_index[i] < eq.alpha_index[i - 1])
      fail(Errc::ValidationError, kWhere, "alpha must be nondecreasing; decreases at t = " + at(w.point(i)));
    if (i > 0 && eq.beta_index[i] < eq.beta_index[i - 1])
      fail(Errc::ValidationError, kWhere, "beta must be nondecreasing; decreases at t = " + at(w.point(i)));
  }
  if (eq.beta_index.back() == eq.beta_index.front())
    fail(Errc::ValidationError, kWhere, "beta is constant over the window, so it cannot be unbounded");
  if (spec.neutral() && eq.alpha_index.back() == eq.alpha_index.front())
    fail(Errc::ValidationError, kWhere, "alpha is constant over the window, so it cannot be unbounded");

  const std::size_t tail = N - std::max<std::size_t>(1, N / 4);
  const auto tail_lo = *std::min_element(eq.A.begin() + static_cast<std::ptrdiff_t>(tail), eq.A.end());
  const auto tail_hi = *std::max_element(eq.A.begin() + static_cast<std::ptrdiff_t>(tail), eq.A.end());
  const auto [lo, hi] = std::minmax_element(eq.A.begin(), eq.A.end());
  switch (spec.range) {
    case RangeTag::R1:
      if (*lo < 0.0 || *hi > 1.0) fail(Errc::ValidationError, kWhere, "range R1 needs 0 <= A <= 1");
      if (tail_hi >= 1.0) fail(Errc::ValidationError, kWhere, "range R1 needs limsup A < 1; A reaches 1 on the tail");
      break;
    case RangeTag::R2:
      if (*lo < -1.0 || *hi > 0.0) fail(Errc::ValidationError, kWhere, "range R2 needs -1 <= A <= 0");
      if (tail_lo <= -1.0) fail(Errc::ValidationError, kWhere, "range R2 needs liminf A > -1; A reaches -1 on the tail");
      break;
    case RangeTag::None:
      if (*lo != 0.0 || *hi != 0.0) fail(Errc::ValidationError, kWhere, "range none needs A = 0");
      break;
  }
}

}  // namespace tsosc
