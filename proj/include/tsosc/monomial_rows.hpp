#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsosc {

// Which generalized polynomial family a table holds.
//   H: h_k(t,s) = int_s^t h_{k-1}(eta, s) d eta
//   G: g_k(t,s) = int_s^t g_{k-1}(sigma(eta), s) d eta
enum class Family { H, G };

// Which argument runs over the window while the other is pinned at the base
// point. `First` tabulates p -> h_k(p, base); `Second` tabulates
// p -> h_k(base, p) through the second-argument recursion
// h_k(t, s) = int_s^t h_{k-1}(t, sigma(eta)) d eta.
enum class Varying { First, Second };

namespace detail {

// rows[k][i] for k in [0, max_k] over consecutive scale points `pts`.
// Every row is a single cumulative sweep out from the base, O(max_k * N).
// Points left of the base use the signed (reversed) integral.
template <class T>
std::vector<std::vector<T>> monomial_rows(std::span<const T> pts, std::size_t base, int max_k, Varying varying,
                                          Family family) {
  const std::size_t n = pts.size();
  std::vector<std::vector<T>> rows(static_cast<std::size_t>(max_k) + 1, std::vector<T>(n, T(0)));
  for (auto& v : rows[0]) v = T(1);
  for (int k = 1; k <= max_k; ++k) {
    const auto& prev = rows[static_cast<std::size_t>(k) - 1];
    auto& cur = rows[static_cast<std::size_t>(k)];
    cur[base] = T(0);
    if (varying == Varying::First) {
      // integrand at eta is prev[eta] (H) or prev[eta + 1] (G)
      const std::size_t shift = family == Family::G ? 1 : 0;
      for (std::size_t i = base; i + 1 < n; ++i) cur[i + 1] = cur[i] + (pts[i + 1] - pts[i]) * prev[i + shift];
      for (std::size_t i = base; i-- > 0;) cur[i] = cur[i + 1] - (pts[i + 1] - pts[i]) * prev[i + shift];
    } else {
      // cur[i] = h_k(base, p_i); the integrand is h_{k-1}(base, sigma(eta)) = prev[eta + 1]
      for (std::size_t i = base; i-- > 0;) cur[i] = cur[i + 1] + (pts[i + 1] - pts[i]) * prev[i + 1];
      for (std::size_t i = base; i + 1 < n; ++i) cur[i + 1] = cur[i] - (pts[i + 1] - pts[i]) * prev[i + 1];
    }
  }
  return rows;
}

}  // namespace detail
}  // namespace tsosc
