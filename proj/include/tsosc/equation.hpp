#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tsosc/expr.hpp"
#include "tsosc/scale.hpp"

namespace tsosc {

// Neutral range of the coefficient A: R1 is 0 <= A <= 1 with limsup A < 1,
// R2 is -1 <= A <= 0 with liminf A > -1. None marks a nonneutral equation.
enum class RangeTag { R1, R2, None };

std::string_view to_string(RangeTag tag) noexcept;
RangeTag range_from_string(std::string_view text);

//   [x(t) + A(t) x(alpha(t))]^{Delta^n} + B(t) x(beta(t)) = 0,  t >= t0
struct NeutralEquationSpec {
  int n = 2;
  TimeScale scale = TimeScale::uniform(1.0);
  double t0 = 0.0;
  Expr A;
  Expr B;
  Expr alpha = Expr::variable();
  Expr beta = Expr::variable();
  RangeTag range = RangeTag::None;

  bool neutral() const { return !A.is_constant(0.0); }
};

// Coefficients sampled on a window that starts at t0. Delays are snapped
// down onto the scale and stored as scale indices, which may precede the
// window.
struct SampledEquation {
  GridWindow window;
  std::vector<double> A;
  std::vector<double> B;
  std::vector<std::int64_t> alpha_index;
  std::vector<std::int64_t> beta_index;
  std::size_t snapped = 0;  // delay values that were not scale points

  // Local window index of beta(t_i), or -1 when it lies before t0.
  std::ptrdiff_t beta_local(std::size_t i) const;
};

SampledEquation sample_equation(const NeutralEquationSpec& spec, std::size_t points);

// Range implied by the sampled A: None when A vanishes, otherwise R1 or R2.
RangeTag infer_range(const SampledEquation& eq);

// Checks B >= 0, alpha(t), beta(t) <= t and nondecreasing, and the range
// conditions on A. Throws ValidationError naming the first violation.
void validate(const NeutralEquationSpec& spec, const SampledEquation& eq);

}  // namespace tsosc
