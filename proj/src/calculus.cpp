#include "tsosc/calculus.hpp"

#include <cmath>
#include <string>

#include "tsosc/error.hpp"

namespace tsosc {

GridFn::GridFn(GridWindow window, std::vector<double> values)
    : window_(std::move(window)), values_(std::move(values)) {
  if (values_.size() != window_.size())
    fail(Errc::InvalidArgument, "calculus::GridFn",
         "expected " + std::to_string(window_.size()) + " samples, got " + std::to_string(values_.size()));
}

GridFn GridFn::sample(const GridWindow& window, const std::function<double(double)>& f) {
  std::vector<double> v;
  v.reserve(window.size());
  for (double t : window.points()) v.push_back(f(t));
  return GridFn(window, std::move(v));
}

double GridFn::at(double t) const { return values_[window_.index_of(t)]; }

double delta_derivative(const GridFn& f, double t) {
  const std::size_t i = f.window().index_of(t);
  if (i + 1 >= f.size())
    fail(Errc::AtRightEndpoint, "calculus::delta_derivative", "sigma(t) lies outside the window");
  return (f[i + 1] - f[i]) / f.window().mu(i);
}

GridFn delta_derivative_n(const GridFn& f, std::size_t k) {
  if (f.size() <= k)
    fail(Errc::WindowTooShort, "calculus::delta_derivative_n",
         "window of " + std::to_string(f.size()) + " points cannot carry order " + std::to_string(k));
  std::vector<double> cur(f.values().begin(), f.values().end());
  const auto& w = f.window();
  for (std::size_t order = 0; order < k; ++order) {
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) cur[i] = (cur[i + 1] - cur[i]) / w.mu(i);
    cur.pop_back();
  }
  return GridFn(w.shorten(k), std::move(cur));
}

std::vector<double> cumulative_integral(const GridFn& f) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) out[i + 1] = out[i] + f.window().mu(i) * f[i];
  return out;
}

double delta_integral(const GridFn& f, double s, double t) {
  const auto& w = f.window();
  auto is = w.try_index_of(s);
  auto it = w.try_index_of(t);
  if (!is || !it) fail(Errc::OutOfWindow, "calculus::delta_integral", "integration limits must be window points");
  const std::size_t lo = std::min(*is, *it);
  const std::size_t hi = std::max(*is, *it);
  double sum = 0.0;
  for (std::size_t i = lo; i < hi; ++i) sum += w.mu(i) * f[i];
  return *is <= *it ? sum : -sum;
}

namespace {

std::pair<std::size_t, std::size_t> ordered_range(const GridFn& p, double s, double t, const char* where) {
  auto is = p.window().try_index_of(s);
  auto it = p.window().try_index_of(t);
  if (!is || !it) fail(Errc::OutOfWindow, where, "endpoints must be window points");
  if (*is > *it) fail(Errc::InvalidArgument, where, "requires s <= t");
  return {*is, *it};
}

}  // namespace

bool is_positively_regressive(const GridFn& p, double s, double t) {
  auto [lo, hi] = ordered_range(p, s, t, "calculus::is_positively_regressive");
  for (std::size_t i = lo; i < hi; ++i)
    if (!(1.0 + p.window().mu(i) * p[i] > 0.0)) return false;
  return true;
}

double exp_fn(const GridFn& p, double t, double s) {
  auto [lo, hi] = ordered_range(p, s, t, "calculus::exp_fn");
  double prod = 1.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double factor = 1.0 + p.window().mu(i) * p[i];
    if (!(factor > 0.0))
      fail(Errc::NotRegressive, "calculus::exp_fn",
           "1 + mu p = " + std::to_string(factor) + " at t = " + std::to_string(p.point(i)));
    prod *= factor;
  }
  return prod;
}

}  // namespace tsosc
