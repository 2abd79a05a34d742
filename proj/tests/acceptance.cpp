// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Runtime budgets are part of each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support/construct.hpp"
#include "support/oracles.hpp"
#include "tsosc/classify.hpp"
#include "tsosc/error.hpp"
#include "tsosc/exact.hpp"
#include "tsosc/monomials.hpp"
#include "tsosc/oscillation.hpp"
#include "tsosc/simulate.hpp"

using namespace tsosc;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool ok = true;
  std::string detail;
};

GridFn on_points(const std::vector<double>& pts, const std::vector<double>& vals) {
  return GridFn(GridWindow(TimeScale::explicit_points(pts), 0, static_cast<std::int64_t>(pts.size()) - 1), vals);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// C(n, k) as an exact integer; (t - s)^{(k)} / k! on Z.
exact::Integer binomial(std::int64_t n, int k) {
  if (n < k) return 0;
  exact::Integer r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// prod_{nu<k} (t - q^nu s) / [nu+1]_q at t = q^j s, written out independently
// of the library. Factoring out s keeps t = q^nu s an exact zero.
double q_product(double q, int k, int j, double s) {
  double r = 1.0;
  for (int nu = 0; nu < k; ++nu) {
    double bracket = 0.0;
    for (int mu = 0; mu <= nu; ++mu) bracket += std::pow(q, mu);
    r *= s * (std::pow(q, j) - std::pow(q, nu)) / bracket;
  }
  return r;
}

// Exact rational deltas of the sampled f: f^{Delta^n} <= 0 and not identically
// zero, and the class-m signs strict on the last quarter of the domain. Strict
// means beyond 1e-12 of the k-th divided sum of |f|, the default sign
// tolerance. Instances failing this lost their pattern when f was rounded to
// double, or carry it only at rounding level.
bool strict_sign_instance(const std::vector<double>& pts, const std::vector<double>& f, int n, int m) {
  using exact::Rational;
  const std::size_t domain = pts.size() - static_cast<std::size_t>(n) + 1;
  const std::size_t tail = domain - (domain + 3) / 4;  // at least 25% of the domain
  const Rational rel(1, 1000000000000LL);
  std::vector<Rational> row(f.begin(), f.end()), size(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) size[i] = abs(row[i]);
  for (int k = 0; k <= n; ++k) {
    if (k < n) {
      for (std::size_t i = tail; i < domain; ++i)
        if (construct::required_sign(m, k) * row[i] <= rel * size[i]) return false;
    } else {
      bool nonzero = false;
      for (const auto& v : row) {
        if (v > 0) return false;
        nonzero = nonzero || v != 0;
      }
      return nonzero;
    }
    std::vector<Rational> next(row.size() - 1), next_size(row.size() - 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const Rational mu = Rational(pts[i + 1]) - Rational(pts[i]);
      next[i] = (row[i + 1] - row[i]) / mu;
      next_size[i] = (size[i + 1] + size[i]) / mu;
    }
    row.swap(next);
    size.swap(next_size);
  }
  return false;
}

Outcome monomials_on_z() {
  const auto z = TimeScale::uniform(1.0, 0.0);
  const exact::RationalUniform exact_z{1, 0};
  std::size_t cases = 0, exact_bad = 0;
  double worst = 0.0;
  for (std::int64_t s = 0; s <= 50; ++s) {
    // one exact table per s covers every t in [s, 50]
    const auto pts = exact::points(exact_z, s, 50);
    const auto rows = detail::monomial_rows<exact::Rational>(pts, 0, 6, Varying::First, Family::H);
    for (int k = 0; k <= 6; ++k)
      for (std::int64_t t = s; t <= 50; ++t) {
        const auto want = binomial(t - s, k);
        if (rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(t - s)] != exact::Rational(want)) ++exact_bad;
        const double w = static_cast<double>(want);
        worst = std::max(worst, oracle::rel_err(h_poly(z, k, static_cast<double>(t), static_cast<double>(s)), w));
        ++cases;
      }
  }
  // spot-check the per-pair entry point against the same oracle
  for (int k = 0; k <= 6; ++k)
    if (exact::poly(exact_z, k, 50, 3) != exact::Rational(binomial(47, k))) ++exact_bad;
  return {exact_bad == 0 && worst <= 1e-9,
          fmt("%.0f cases, exact mismatches %.0f, worst float rel err %.2e", static_cast<double>(cases),
              static_cast<double>(exact_bad), worst)};
}

Outcome geometric_closed_form() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (double q : {1.5, 2.0, 3.0}) {
    const GridWindow w(TimeScale::geometric(q, 1.0), 0, 59);
    for (std::size_t s : {std::size_t{0}, std::size_t{7}, std::size_t{30}}) {
      const MonomialTable table(w, s, 5);
      for (int k = 0; k <= 5; ++k)
        for (std::size_t i = s; i < w.size(); ++i) {
          const double want = q_product(q, k, static_cast<int>(i - s), w.point(s));
          worst = std::max(worst, std::abs(table(k, i) - want) / std::max(1.0, std::abs(want)));
          ++cases;
        }
    }
  }
  return {worst <= 1e-9, fmt("%.0f cases, worst rel err %.2e", static_cast<double>(cases), worst)};
}

Outcome taylor_identity() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> size(10, 100);
  std::uniform_int_distribution<int> order(1, 5);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  double worst = 0.0;
  std::size_t checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t N = size(rng);
    const int n = order(rng);
    const auto pts = oracle::random_points(rng, N, 0.25, 1.75, val(rng));
    const GridWindow w(TimeScale::explicit_points(pts), 0, static_cast<std::int64_t>(N) - 1);
    std::vector<double> fv(N);
    for (auto& v : fv) v = val(rng);
    const GridFn f(w, fv);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (int j = 0; j < 4; ++j) {
      const std::size_t s = pick(rng);
      for (std::size_t t = 0; t < N; ++t) {
        TaylorParts parts{};
        try {
          parts = taylor_eval(f, n, pts[s], pts[t]);
        } catch (const Error& e) {
          if (e.code() == Errc::WindowTooShort) continue;  // not admissible: needs points past the window
          throw;
        }
        const long double total = parts.sum_part + parts.remainder_part;
        worst = std::max(worst, static_cast<double>(std::abs(total - fv[t]) / std::max(1.0L, std::abs(static_cast<long double>(fv[t])))));
        ++checked;
      }
    }
  }
  return {checked > 10000 && worst <= 1e-10,
          fmt("%.0f (s,t) pairs, worst rel err %.2e", static_cast<double>(checked), worst)};
}

Outcome lemma_suite() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> kind(0, 2), order(0, 4);
  std::uniform_int_distribution<std::size_t> size(8, 30);
  std::uniform_real_distribution<double> qd(1.05, 2.5), hd(0.1, 2.0);
  std::size_t failures = 0;
  double worst = 0.0;
  const char* names[] = {"argument-swap", "product", "convolution", "g>=h"};
  std::string first_failure;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t N = size(rng);
    const int k = kind(rng);
    const TimeScale ts = k == 0   ? TimeScale::uniform(hd(rng), -3.0)
                         : k == 1 ? TimeScale::geometric(qd(rng), 0.5)
                                  : TimeScale::explicit_points(oracle::random_points(rng, N));
    const GridWindow w(ts, 0, static_cast<std::int64_t>(N) - 1);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(0, N - 2)(rng);
    const auto rep_report = check_lemma_inequalities(w, std::max(1, order(rng)), order(rng), w.point(s), 1e-12);
    for (std::size_t i = 0; i < 4; ++i) {
      worst = std::min(worst, rep_report.lemmas[i].min_scaled_slack);
      if (!rep_report.lemmas[i].holds) {
        ++failures;
        if (first_failure.empty()) first_failure = std::string(", first failure: ") + names[i];
      }
    }
  }
  return {failures == 0, fmt("1000 instances, worst scaled slack %.2e, failures %.0f", worst,
                             static_cast<double>(failures)) + first_failure};
}

Outcome philos_suite() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> order(1, 5);
  std::uniform_int_distribution<std::size_t> size(40, 500);
  std::uniform_real_distribution<double> qd(1.03, 1.1);
  std::size_t strict[2] = {0, 0}, recovered = 0, philos_checked = 0, philos_bad = 0, m0 = 0, m0_violations = 0;
  double worst = 0.0;
  std::string miss;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = order(rng);
    std::vector<int> ms;
    for (int m = (n - 1) % 2; m < n; m += 2) ms.push_back(m);
    const int m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
    const std::size_t N = size(rng);
    const bool geometric = rep % 2 == 1;
    std::vector<double> pts(N);
    const double q = qd(rng);
    for (std::size_t i = 0; i < N; ++i) pts[i] = geometric ? std::pow(q, static_cast<double>(i)) : static_cast<double>(i);
    const auto built = construct::backward_integration(rng, pts, n, m, rep % 3 == 0, N / 5);
    if (!strict_sign_instance(built.pts, built.f, n, m)) continue;
    ++strict[geometric];
    const auto f = on_points(built.pts, built.f);
    KiguradzeProfile p;
    try {
      p = kiguradze_profile(f, n);
    } catch (const Error& e) {
      if (miss.empty()) miss = fmt("; first miss rep %.0f: ", rep) + e.what();
      continue;
    }
    if (p.m != m) {
      if (miss.empty()) miss = fmt("; first miss rep %.0f: m %.0f for %.0f", rep, p.m, m);
      continue;
    }
    ++recovered;
    if (n < 2) continue;
    const auto slack = verify_philos(f, n, p);
    if (m == 0) {
      ++m0;
      if (!slack.holds) ++m0_violations;
      continue;
    }
    ++philos_checked;
    worst = std::min(worst, slack.worst_scaled);
    if (!slack.holds) ++philos_bad;
  }
  const std::size_t total = strict[0] + strict[1];
  // both scale types must stay well represented among the strict instances
  return {strict[0] >= 400 && strict[1] >= 200 && recovered == total && philos_bad == 0,
          fmt("strict-sign %.0f/1000 (uniform %.0f, geometric %.0f), m recovered in %.0f", static_cast<double>(total),
              static_cast<double>(strict[0]), static_cast<double>(strict[1]), static_cast<double>(recovered)) +
              fmt("; Philos (m>=1) %.0f checked, worst scaled slack %.2e", static_cast<double>(philos_checked), worst) +
              fmt("; m=0 outside the bound: %.0f of %.0f violate", static_cast<double>(m0_violations),
                  static_cast<double>(m0)) +
              miss};
}

Outcome lambda_corollary() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> order(2, 5);
  std::uniform_real_distribution<double> rho_d(0.5, 0.75);
  std::size_t ok = 0, by_class[2] = {0, 0};
  std::string problem;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = order(rng);
    std::vector<int> ms;
    for (int m = (n - 1) % 2; m < n; m += 2) ms.push_back(m);
    const int m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
    // m = 0 needs f -> c > 0 with h_{n-1} f^{Delta^{n-1}} -> 0 inside the
    // window, which a fast geometric tail gives; the other classes grow
    construct::Built built;
    if (m == 0) {
      // the window ends where rho^t reaches 1e-8, above the sign tolerance
      const double rho = rho_d(rng);
      built = construct::geometric_tail(rng, static_cast<std::size_t>(std::log(1e-8) / std::log(rho)), n, 0, 1.0, rho);
    } else {
      std::vector<double> pts(150);
      for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<double>(i);
      built = construct::backward_integration(rng, pts, n, m, true, 10);
    }
    const auto f = on_points(built.pts, built.f);
    try {
      const auto p = kiguradze_profile(f, n);
      std::size_t prev = 0;
      bool good = p.m == m;
      for (double lambda : {0.1, 0.5, 0.9}) {
        const auto r = verify_philos_lambda(f, n, lambda, built.pts[0], p);
        good = good && r.r_index >= prev && r.r_index < p.domain_size && std::isfinite(r.r);
        prev = r.r_index;
      }
      if (good) {
        ++ok;
        ++by_class[m > 0];
      }
    } catch (const Error& e) {
      if (problem.empty()) problem = fmt(", first error (n=%.0f, m=%.0f): ", n, m) + e.what();
    }
  }
  return {ok == 100, fmt("%.0f/100 instances with finite, nondecreasing r (m=0: %.0f, m>=1: %.0f)",
                         static_cast<double>(ok), static_cast<double>(by_class[0]), static_cast<double>(by_class[1])) +
                         problem};
}

Outcome q_difference_example() {
  const Params params{{"q", 2}, {"n", 2}, {"b0", 1}, {"beta0", 1}};
  const auto th = threshold_closed_form("q-difference", params);
  ReproduceOptions o;
  o.criterion_points = 41;
  o.horizon = 200;
  const auto r = reproduce_example("q-difference", params, o);
  double worst = 0.0;
  std::size_t tail = 0;
  for (const auto& p : r.windows.liminf.trace)
    if (p.t >= std::pow(2.0, 20)) {
      worst = std::max(worst, std::abs(p.value - 0.5) / 0.5);
      ++tail;
    }
  const bool reaches = !r.windows.liminf.trace.empty() && r.spec.scale.point(r.spec.scale.index_of(r.spec.t0) + 40) ==
                                                               std::pow(2.0, 40);
  const std::size_t changes = r.simulation ? r.simulation->sign_changes : 0;
  const bool ok = std::abs(th.lhs - 0.5) < 1e-12 && std::abs(th.rhs - 0.25) < 1e-12 && th.satisfied && reaches &&
                  tail > 0 && worst <= 0.05 && r.conclusion.conclusion == Conclusion::AllSolutionsOscillate &&
                  changes >= 20;
  return {ok, fmt("lhs %.4g rhs %.4g; trace off 0.5 by <= %.2f%% on %.0f points >= 2^20", th.lhs, th.rhs, 100 * worst,
                  static_cast<double>(tail)) +
                  ", " + std::string(to_string(r.conclusion.conclusion)) +
                  fmt(", %.0f sign changes in 200 points", static_cast<double>(changes))};
}

Outcome difference_example() {
  const Params base{{"n", 2}, {"a0", 0.5}, {"alpha0", 1}, {"beta0", 1}, {"p", 1}, {"b0", 1}};
  const auto th = threshold_closed_form("difference", base);
  ReproduceOptions o;
  o.horizon = 5000;
  const auto r = reproduce_example("difference", base, o);
  auto weak = base;
  weak["b0"] = 0.4;
  const auto th_weak = threshold_closed_form("difference", weak);
  const auto r_weak = reproduce_example("difference", weak);
  const std::size_t changes = r.simulation ? r.simulation->sign_changes : 0;
  const double t_end = r.simulation ? r.simulation->t_end : 0.0;
  const bool ok = th.satisfied && std::abs(th.lhs - 0.5) < 1e-12 && std::abs(th.rhs - 0.25) < 1e-12 &&
                  t_end >= 5000 && changes >= 10 && !th_weak.satisfied && std::abs(th_weak.lhs - 0.2) < 1e-12 &&
                  r_weak.conclusion.conclusion == Conclusion::Inconclusive;
  return {ok, fmt("b0=1: %.4g > %.4g, ", th.lhs, th.rhs) +
                  fmt("%.0f sign changes to t=%.0f; ", static_cast<double>(changes), t_end) +
                  fmt("b0=0.4: %.4g vs %.4g, ", th_weak.lhs, th_weak.rhs) +
                  std::string(to_string(r_weak.conclusion.conclusion))};
}

Outcome continuous_example() {
  const auto th = threshold_closed_form("continuous", {{"n", 4}});
  const double crossover = th.extra.at("beta0_crossover");
  const double want = std::exp(4.0 / (std::exp(1.0) * 3.0));
  const bool ok = std::abs(crossover - 1.63314) <= 5e-5 && std::abs(crossover - want) <= 1e-12;
  return {ok, fmt("crossover %.10f (target 1.63314, exp(4/(3e)) = %.10f)", crossover, want)};
}

Outcome limit_ratios() {
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    double gamma = 1.0;  // Gamma_2(n+1) = prod_{i=1}^{n} (2^i - 1)
    for (int i = 1; i <= n; ++i) gamma *= std::pow(2.0, i) - 1.0;
    const auto lib = limit_ratio_check(2.0, n, LimitDirection::LargeT, 20);
    const double direct = h_poly(TimeScale::geometric(2.0, 1.0), n, std::pow(2.0, 20), 1.0) / std::pow(2.0, 20 * n);
    worst = std::max({worst, std::abs(lib.estimate * gamma - 1.0), std::abs(direct * gamma - 1.0)});
    if (std::abs(lib.limit * gamma - 1.0) > 1e-12) return {false, fmt("n=%.0f: library limit %.6g", n, lib.limit)};
  }
  return {worst <= 0.02, fmt("n=1..4 at t=2^20, worst relative gap %.2e", worst)};
}

Outcome decay_corollary() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> rho_d(0.8, 0.92), a_d(0.5, 2.0);
  std::uniform_int_distribution<std::size_t> n0_d(20, 30);
  const std::pair<int, int> classes[] = {{3, 0}, {4, 1}, {5, 0}, {5, 2}};
  std::size_t ok = 0;
  double worst_ratio = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const auto [n, m] = classes[rep % 4];
    const double rho = rho_d(rng), a = a_d(rng);
    const std::size_t N0 = n0_d(rng);
    auto seed = rng();
    std::vector<std::vector<DecayEntry>> runs;
    for (std::size_t N : {N0, 2 * N0}) {
      std::mt19937_64 local(seed);  // same constants for both window sizes
      const auto built = construct::geometric_tail(local, N, n, m, a, rho);
      const auto f = on_points(built.pts, built.f);
      const auto p = kiguradze_profile(f, n);
      if (p.m != m) break;
      runs.push_back(decay_check(f, n, p));
    }
    if (runs.size() != 2 || runs[0].size() != static_cast<std::size_t>(n - m - 1) || runs[1].size() != runs[0].size())
      continue;
    bool good = true;
    for (std::size_t j = 0; j < runs[0].size(); ++j) {
      const double ratio = runs[0][j].tail_max / runs[1][j].tail_max;
      worst_ratio = j == 0 && rep == 0 ? ratio : std::min(worst_ratio, ratio);
      good = good && ratio >= 2.0;
    }
    if (good) ++ok;
  }
  return {ok == 100, fmt("%.0f/100 instances, smallest shrink factor %.3g", static_cast<double>(ok), worst_ratio)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "monomial oracle on Z", 1.0, monomials_on_z},
      {2, "geometric closed form", 1.0, geometric_closed_form},
      {3, "Taylor identity", 5.0, taylor_identity},
      {4, "lemma inequalities", 10.0, lemma_suite},
      {5, "Kiguradze and Philos", 30.0, philos_suite},
      {6, "lambda corollary", 10.0, lambda_corollary},
      {7, "q-difference example", 2.0, q_difference_example},
      {8, "difference example", 2.0, difference_example},
      {9, "continuous crossover", 0.1, continuous_example},
      {10, "limit ratios on 2^Z", 1.0, limit_ratios},
      {11, "decay corollary", 10.0, decay_corollary},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("unexpected error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.ok && secs < c.budget_s;
    if (!pass) ++failed;
    std::printf("%s  %2d  %-24s %7.3fs (< %gs)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
