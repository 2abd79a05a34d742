#include "tsosc/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsosc/error.hpp"
#include "tsosc/monomials.hpp"

namespace tsosc {

namespace {

// D[k][i] = f^{Delta^k}(t_i) for k = 0..n; row k has size - k entries.
// With `magnitude` set the same recursion runs on |f| with sums instead of
// differences, giving the scale of the rounding error in each entry.
std::vector<std::vector<double>> delta_rows(const GridFn& f, int n, bool magnitude = false) {
  const auto& w = f.window();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n) + 1);
  rows[0].assign(f.values().begin(), f.values().end());
  if (magnitude)
    for (double& v : rows[0]) v = std::abs(v);
  for (int k = 1; k <= n; ++k) {
    const auto& prev = rows[static_cast<std::size_t>(k) - 1];
    auto& cur = rows[static_cast<std::size_t>(k)];
    cur.resize(prev.size() - 1);
    for (std::size_t i = 0; i < cur.size(); ++i)
      cur[i] = (magnitude ? prev[i + 1] + prev[i] : prev[i + 1] - prev[i]) / w.mu(i);
  }
  return rows;
}

int required_sign(int m, int k) {
  if (k < m) return 1;
  return ((m + k) % 2 == 0) ? 1 : -1;
}

void check_profile(const GridFn& f, int n, const KiguradzeProfile& profile, const char* where) {
  if (profile.n != n || profile.domain_size + static_cast<std::size_t>(n) != f.size() + 1)
    fail(Errc::InvalidArgument, where, "profile does not belong to this function and order");
}

}  // namespace

KiguradzeProfile kiguradze_profile(const GridFn& f, int n, double strict_tol) {
  constexpr const char* where = "classify::kiguradze_profile";
  if (n < 1) fail(Errc::BadOrder, where, "n must be a positive integer");
  if (strict_tol < 0.0) fail(Errc::InvalidArgument, where, "strict_tol must be nonnegative");
  if (f.size() < 4 * static_cast<std::size_t>(n))
    fail(Errc::WindowTooShort, where, "window needs at least 4n points");

  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] > 0.0)) fail(Errc::HypothesisViolated, where, "f is not positive at t = " + std::to_string(f.point(i)));

  const auto d = delta_rows(f, n);
  const auto scale = delta_rows(f, n, true);
  auto tol = [&](int k, std::size_t i) { return strict_tol * scale[static_cast<std::size_t>(k)][i]; };
  const auto& top = d[static_cast<std::size_t>(n)];
  bool nonzero = false;
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (top[i] > tol(n, i))
      fail(Errc::HypothesisViolated, where, "f^{Delta^n} is positive at t = " + std::to_string(f.point(i)));
    if (top[i] < 0.0) nonzero = true;
  }
  if (!nonzero) fail(Errc::HypothesisViolated, where, "f^{Delta^n} vanishes identically");

  const std::size_t domain = f.size() - static_cast<std::size_t>(n) + 1;
  const std::size_t min_tail = (domain + 3) / 4;
  for (int m = (n - 1) % 2; m < n; m += 2) {
    // earliest index from which every order carries its required sign
    std::size_t start = domain;
    while (start > 0) {
      const std::size_t i = start - 1;
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        ok = required_sign(m, k) * d[ku][i] > tol(k, i);
      }
      if (!ok) break;
      --start;
    }
    if (domain - start >= min_tail && start < domain) {
      KiguradzeProfile p;
      p.n = n;
      p.m = m;
      p.s_index = start;
      p.s = f.point(start);
      p.domain_size = domain;
      for (int k = 0; k < n; ++k) p.signs.push_back(required_sign(m, k));
      return p;
    }
  }
  fail(Errc::PatternNotFound, where, "no admissible m holds on the last quarter of the window");
}

PhilosSlack verify_philos(const GridFn& f, int n, const KiguradzeProfile& profile) {
  constexpr const char* where = "classify::verify_philos";
  if (n < 2) fail(Errc::BadOrder, where, "n must be at least 2");
  check_profile(f, n, profile, where);
  const auto top = delta_derivative_n(f, static_cast<std::size_t>(n - 1));
  const MonomialTable h(f.window(), profile.s_index, n - 1);

  PhilosSlack out;
  out.applies = profile.m >= 1;
  bool first = true;
  for (std::size_t i = profile.s_index; i < profile.domain_size; ++i) {
    const double slack = f[i] - h(n - 1, i) * top[i];
    const double scaled = slack / std::max(1.0, std::abs(f[i]));
    if (first || scaled < out.worst_scaled) {
      out.worst_scaled = scaled;
      out.worst_slack = slack;
      out.at_index = i;
      first = false;
    }
  }
  out.holds = out.worst_scaled >= -kPhilosTolerance;
  return out;
}

PhilosLambda verify_philos_lambda(const GridFn& f, int n, double lambda, double t0,
                                  const KiguradzeProfile& profile) {
  constexpr const char* where = "classify::verify_philos_lambda";
  if (n < 1) fail(Errc::BadOrder, where, "n must be a positive integer");
  if (!(lambda > 0.0 && lambda < 1.0)) fail(Errc::InvalidArgument, where, "lambda must lie in (0, 1)");
  check_profile(f, n, profile, where);
  const std::size_t t0_index = f.window().index_of(t0);

  const auto vals = f.values();
  const double fmax = *std::max_element(vals.begin(), vals.end());
  const std::size_t quarter = f.size() - f.size() / 4;
  const double tail_min = *std::min_element(vals.begin() + static_cast<std::ptrdiff_t>(quarter), vals.end());
  if (tail_min < fmax * 1e-6) fail(Errc::TailVanishes, where, "tail of f falls below max(f) * 1e-6");

  const auto top = delta_derivative_n(f, static_cast<std::size_t>(n - 1));
  const MonomialTable h(f.window(), t0_index, n - 1);
  const std::size_t lo = std::max(profile.s_index, t0_index);
  auto slack_at = [&](std::size_t i) { return f[i] - lambda * h(n - 1, i) * top[i]; };
  auto ok_at = [&](std::size_t i) { return slack_at(i) / std::max(1.0, std::abs(f[i])) >= -kPhilosTolerance; };

  std::size_t r = profile.domain_size;
  while (r > lo && ok_at(r - 1)) --r;
  if (r == profile.domain_size) fail(Errc::NotFoundInWindow, where, "inequality fails at the end of the window");

  PhilosLambda out;
  out.r_index = r;
  out.r = f.point(r);
  bool first = true;
  for (std::size_t i = r; i < profile.domain_size; ++i) {
    const double slack = slack_at(i);
    const double scaled = slack / std::max(1.0, std::abs(f[i]));
    if (first || scaled < out.slack.worst_scaled) {
      out.slack.worst_scaled = scaled;
      out.slack.worst_slack = slack;
      out.slack.at_index = i;
      first = false;
    }
  }
  out.slack.holds = out.slack.worst_scaled >= -kPhilosTolerance;
  return out;
}

std::vector<DecayEntry> decay_check(const GridFn& f, int n, const KiguradzeProfile& profile) {
  check_profile(f, n, profile, "classify::decay_check");
  std::vector<DecayEntry> out;
  if (profile.m + 1 >= n) return out;
  const auto d = delta_rows(f, n - 1);
  const std::size_t from = profile.domain_size - profile.domain_size / 4;
  for (int k = profile.m + 1; k < n; ++k) {
    const auto& row = d[static_cast<std::size_t>(k)];
    double mx = 0.0;
    for (std::size_t i = from; i < profile.domain_size; ++i) mx = std::max(mx, std::abs(row[i]));
    out.push_back({k, mx});
  }
  return out;
}

}  // namespace tsosc
