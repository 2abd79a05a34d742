#pragma once

#include <cstddef>
#include <vector>

#include "tsosc/calculus.hpp"

namespace tsosc {

// Eventual sign pattern of f and its deltas when f > 0 and f^{Delta^n} <= 0:
// f^{Delta^k} > 0 for k < m and (-1)^{m+k} f^{Delta^k} > 0 for m <= k < n,
// holding from window index s_index through the end of the pattern domain
// (the points where f^{Delta^{n-1}} is defined).
struct KiguradzeProfile {
  int n = 0;
  int m = 0;
  std::size_t s_index = 0;
  double s = 0.0;
  std::size_t domain_size = 0;  // window size - n + 1
  std::vector<int> signs;       // sign of f^{Delta^k} on the tail, k = 0..n-1

  std::size_t tail_length() const noexcept { return domain_size - s_index; }
};

// The pattern must hold on at least the last quarter of the domain. A value
// of f^{Delta^k} counts as strictly signed when it exceeds strict_tol times
// its local rounding scale, the k-th divided sum of |f| over the same points.
KiguradzeProfile kiguradze_profile(const GridFn& f, int n, double strict_tol = 1e-12);

struct PhilosSlack {
  double worst_slack = 0.0;   // min f(t) - rhs(t)
  double worst_scaled = 0.0;  // min (f(t) - rhs(t)) / max(1, |f(t)|)
  std::size_t at_index = 0;
  bool holds = true;          // worst_scaled >= -tolerance
  bool applies = true;        // false for m = 0, where the bound can fail
};

inline constexpr double kPhilosTolerance = 1e-10;

// min over t >= s of f(t) - h_{n-1}(t, s) f^{Delta^{n-1}}(t). The bound is
// guaranteed only for m >= 1; f = 0.7^t on Z with n = 3 (m = 0) violates it.
PhilosSlack verify_philos(const GridFn& f, int n, const KiguradzeProfile& profile);

struct PhilosLambda {
  std::size_t r_index = 0;
  double r = 0.0;
  PhilosSlack slack;  // over [r, end]
};

// Smallest index r >= max(s, t0) from which
// f(t) >= lambda h_{n-1}(t, t0) f^{Delta^{n-1}}(t) holds to the end.
PhilosLambda verify_philos_lambda(const GridFn& f, int n, double lambda, double t0,
                                  const KiguradzeProfile& profile);

struct DecayEntry {
  int k;
  double tail_max;  // max |f^{Delta^k}| over the last quarter of the domain
};

// Orders k in (m, n), which tend to zero.
std::vector<DecayEntry> decay_check(const GridFn& f, int n, const KiguradzeProfile& profile);

}  // namespace tsosc
