#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tsosc/scale.hpp"

namespace tsosc {

// A real function sampled at every point of a window. Evaluation off the
// window is an error, never an extrapolation.
class GridFn {
 public:
  GridFn(GridWindow window, std::vector<double> values);
  static GridFn sample(const GridWindow& window, const std::function<double(double)>& f);

  const GridWindow& window() const noexcept { return window_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double point(std::size_t i) const { return window_.point(i); }
  // Value at the scale point t.
  double at(double t) const;

 private:
  GridWindow window_;
  std::vector<double> values_;
};

// (f(sigma(t)) - f(t)) / mu(t)
double delta_derivative(const GridFn& f, double t);
// f^{Delta^k} on the window shortened by k points at the right.
GridFn delta_derivative_n(const GridFn& f, std::size_t k);

// Left-rectangle sum over [s, t); signed when s > t.
double delta_integral(const GridFn& f, double s, double t);
// F[i] = integral from the first window point to point i.
std::vector<double> cumulative_integral(const GridFn& f);

bool is_positively_regressive(const GridFn& p, double s, double t);
// Generalized exponential e_p(t, s) = prod over [s, t) of (1 + mu p).
double exp_fn(const GridFn& p, double t, double s);

}  // namespace tsosc
