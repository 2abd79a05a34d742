#pragma once

// Exact evaluation of the generalized monomials on uniform scales with a
// rational step. Used as a trustworthy oracle for the floating-point path.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "tsosc/error.hpp"
#include "tsosc/monomial_rows.hpp"

namespace tsosc::exact {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// The scale anchor + k * step, k an integer.
struct RationalUniform {
  Rational step{1};
  Rational anchor{0};

  Rational point(std::int64_t k) const { return anchor + step * k; }
};

inline std::vector<Rational> points(const RationalUniform& ts, std::int64_t first, std::int64_t last) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t k = first; k <= last; ++k) out.push_back(ts.point(k));
  return out;
}

// h_k (or g_k) at (point(t_index), point(s_index)) by the integral recursion.
inline Rational poly(const RationalUniform& ts, int k, std::int64_t t_index, std::int64_t s_index,
                     Family family = Family::H) {
  if (k < 0) fail(Errc::NegativeOrder, "exact::poly", "order must be nonnegative");
  const std::int64_t lo = std::min(t_index, s_index);
  const std::int64_t hi = std::max(t_index, s_index);
  const auto pts = points(ts, lo, hi);
  const auto rows = detail::monomial_rows<Rational>(pts, static_cast<std::size_t>(s_index - lo), k,
                                                    Varying::First, family);
  return rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(t_index - lo)];
}

// (1/n!) prod_{i<n} (t - i h - s)
inline Rational closed_uniform(const Rational& h, int n, const Rational& t, const Rational& s) {
  if (n < 0) fail(Errc::NegativeOrder, "exact::closed_uniform", "order must be nonnegative");
  Rational prod{1};
  for (int i = 0; i < n; ++i) prod *= (t - h * i - s) / Rational(i + 1);
  return prod;
}

}  // namespace tsosc::exact
