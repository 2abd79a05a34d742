#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "support/expect.hpp"
#include "tsosc/error.hpp"
#include "tsosc/exact.hpp"
#include "tsosc/monomials.hpp"

using namespace tsosc;

namespace {
using testing::error_code;

const auto kZ = TimeScale::uniform(1.0, 0.0);
const auto kTwoZ = TimeScale::geometric(2.0, 1.0);
}  // namespace

TEST_CASE("h_poly worked values") {
  CHECK(h_poly(kZ, 0, 7.0, 3.0) == 1.0);
  CHECK(h_poly(kTwoZ, 0, 1.0, 64.0) == 1.0);
  CHECK(h_poly(kZ, 2, 5.0, 2.0) == 3.0);
  CHECK(h_closed_uniform(1.0, 2, 5.0, 2.0) == 3.0);
  CHECK(h_poly(kTwoZ, 2, 4.0, 1.0) == 2.0);
  CHECK(h_poly(kZ, 1, 6.0, 6.0) == 0.0);
  CHECK(error_code([] { h_poly(kZ, -1, 1.0, 0.0); }) == Errc::NegativeOrder);
  CHECK(error_code([] { h_poly(kZ, 1, 1.5, 0.0); }) == Errc::OutOfWindow);
}

TEST_CASE("g_poly worked values") {
  CHECK(g_poly(kZ, 0, 5.0, 2.0) == 1.0);
  CHECK(g_poly(kZ, 1, 5.0, 2.0) == 3.0);
  CHECK(g_poly(kZ, 2, 5.0, 2.0) == 6.0);
}

TEST_CASE("q-gamma") {
  CHECK(q_gamma(2.0, 1) == 1.0);
  CHECK(q_gamma(3.7, 1) == 1.0);
  CHECK(q_gamma(3.7, 2) == 1.0);
  CHECK(q_gamma(2.0, 3) == 3.0);
  CHECK(q_gamma(2.0, 4) == 21.0);  // 1 * 3 * 7
  CHECK(q_gamma(1.0, 5) == 24.0);
  CHECK(error_code([] { q_gamma(2.0, 0); }) == Errc::BadOrder);
}

TEST_CASE("geometric product form") {
  CHECK(h_closed_geometric(2.0, 2, 4.0, 1.0) == 2.0);
  CHECK(h_closed_geometric(2.0, 0, 4.0, 1.0) == 1.0);
  CHECK(h_closed_geometric(2.0, 3, 8.0, 8.0) == 0.0);
}

TEST_CASE("recursion matches the brute-force definition, both orderings") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = oracle::random_points(rng, 12);
    const auto ts = TimeScale::explicit_points(pts);
    for (int k = 0; k <= 4; ++k)
      for (std::size_t t = 0; t < pts.size(); ++t)
        for (std::size_t s = 0; s < pts.size(); s += 3) {
          CHECK(oracle::rel_err(h_poly(ts, k, pts[t], pts[s]), oracle::brute_h(pts, k, t, s)) < 1e-12);
          CHECK(oracle::rel_err(g_poly(ts, k, pts[t], pts[s]), oracle::brute_g(pts, k, t, s)) < 1e-12);
        }
  }
}

TEST_CASE("second-argument table agrees with the first-argument recursion") {
  std::mt19937_64 rng(11);
  const auto pts = oracle::random_points(rng, 30);
  const GridWindow w(TimeScale::explicit_points(pts), 0, 29);
  for (std::size_t t = 0; t < pts.size(); t += 4) {
    const MonomialTable second(w, t, 5, Varying::Second);
    for (std::size_t s = 0; s < pts.size(); ++s) {
      const MonomialTable first(w, s, 5, Varying::First);
      for (int k = 0; k <= 5; ++k) CHECK(oracle::rel_err(second(k, s), first(k, t)) < 1e-11);
    }
  }
}

TEST_CASE("closed forms on hZ and q^Z over 200-point windows") {
  for (double h : {1.0, 0.5, 0.3}) {
    const auto ts = TimeScale::uniform(h, -2.0);
    const GridWindow w(ts, 0, 199);
    for (std::size_t s : {std::size_t{0}, std::size_t{57}, std::size_t{199}}) {
      const MonomialTable table(w, s, 6);
      for (int k = 0; k <= 6; ++k)
        for (std::size_t i = 0; i < w.size(); ++i) {
          const double closed = h_closed_uniform(h, k, w.point(i), w.point(s));
          CHECK(std::abs(table(k, i) - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
        }
    }
  }
  for (double q : {1.05, 1.5, 2.0}) {
    const auto ts = TimeScale::geometric(q, 1.0);
    const GridWindow w(ts, -20, 179);
    for (std::size_t s : {std::size_t{0}, std::size_t{20}, std::size_t{120}}) {
      const MonomialTable table(w, s, 6);
      for (int k = 0; k <= 6; ++k)
        for (std::size_t i = s; i < w.size(); ++i) {
          const double closed = h_closed_geometric(q, k, w.point(i), w.point(s));
          // the product form cancels when t is near q^j s, so scale by its factor sizes
          double size = 1.0;
          for (int j = 0; j < k; ++j) size *= w.point(i) + std::pow(q, j) * w.point(s);
          size /= q_gamma(q, k + 1);
          if (!std::isfinite(size)) continue;
          CHECK(std::abs(table(k, i) - closed) <= 1e-9 * std::max(1.0, size));
        }
    }
  }
}

TEST_CASE("exact integer path on Z") {
  const exact::RationalUniform z{1, 0};
  for (int k = 0; k <= 6; ++k)
    for (std::int64_t s = 0; s <= 20; s += 5)
      for (std::int64_t t = 0; t <= 30; ++t)
        CHECK(exact::poly(z, k, t, s) == exact::closed_uniform(1, k, t, s));
  // rational step 1/3
  const exact::RationalUniform third{exact::Rational(1, 3), exact::Rational(-1, 2)};
  for (int k = 0; k <= 5; ++k)
    CHECK(exact::poly(third, k, 17, 4) == exact::closed_uniform(third.step, k, third.point(17), third.point(4)));
  CHECK(exact::poly(z, 2, 5, 2, Family::G) == 6);
}

TEST_CASE("derivative relation and Property 1") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto pts = oracle::random_points(rng, 50);
    const GridWindow w(TimeScale::explicit_points(pts), 0, 49);
    const std::size_t s = 10 + static_cast<std::size_t>(rep);
    const MonomialTable table(w, s, 5);
    for (int k = 1; k <= 5; ++k) {
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        CHECK((table(k, i + 1) - table(k, i)) / w.mu(i) == doctest::Approx(table(k - 1, i)).epsilon(1e-9));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      for (std::size_t i = s; i + 1 < w.size(); ++i) {
        CHECK(table(k, i) >= 0.0);
        CHECK(table(k, i + 1) >= table(k, i));
      }
      for (std::size_t i = 0; i <= s; ++i) CHECK(sign * table(k, i) >= 0.0);
    }
  }
}

TEST_CASE("second property of linear jumps on q^Z") {
  // h_n(t,s) = (-1)^n q^{n(n-1)/2} h_n(s, rho^{n-1}(t))
  for (double q : {1.5, 2.0, 3.0}) {
    const auto ts = TimeScale::geometric(q, 1.0);
    for (int n = 1; n <= 4; ++n)
      for (std::int64_t kt = 0; kt <= 12; ++kt)
        for (std::int64_t ks = 0; ks <= 12; ks += 2) {
          const double lhs = h_poly(ts, n, ts.point(kt), ts.point(ks));
          const double sign = (n % 2 == 0) ? 1.0 : -1.0;
          const double rhs = sign * std::pow(q, 0.5 * n * (n - 1)) * h_poly(ts, n, ts.point(ks), ts.point(kt - n + 1));
          CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));
        }
  }
}

TEST_CASE("Taylor expansion") {
  const GridWindow w(kZ, 0, 12);
  const auto sq = GridFn::sample(w, [](double t) { return t * t; });
  auto one = taylor_eval(sq, 1, 2.0, 7.0);
  CHECK(one.sum_part == 4.0);
  CHECK(one.remainder_part == 45.0);
  auto three = taylor_eval(sq, 3, 0.0, 4.0);
  CHECK(three.remainder_part == 0.0);
  CHECK(three.sum_part == 16.0);
  CHECK(error_code([&] { taylor_eval(sq, 3, 0.0, 11.0); }) == Errc::WindowTooShort);
  CHECK(error_code([&] { taylor_eval(sq, 0, 0.0, 1.0); }) == Errc::BadOrder);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = oracle::random_points(rng, 25);
    const GridWindow ew(TimeScale::explicit_points(pts), 0, 24);
    std::vector<double> fv(ew.size());
    for (auto& v : fv) v = val(rng);
    const GridFn f(ew, fv);
    for (std::size_t s = 0; s <= 22; s += 3)
      for (std::size_t t = 0; t <= 23; ++t) {
        const auto parts = taylor_eval(f, 2, pts[s], pts[t]);
        CHECK(std::abs(parts.sum_part + parts.remainder_part - fv[t]) <= 1e-10L * std::max(1.0, std::abs(fv[t])));
      }
  }
}

TEST_CASE("convolution identity") {
  CHECK(convolution_residual(kZ, 3, 0, 1.0, 9.0) == 0.0);
  CHECK(convolution_residual(kZ, 1, 1, 0.0, 4.0) == 0.0);
  CHECK(convolution_residual(kTwoZ, 2, 3, 4.0, 4.0) == 0.0);
  CHECK(error_code([] { convolution_residual(kZ, 0, 1, 0.0, 4.0); }) == Errc::NegativeOrder);

  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = oracle::random_points(rng, 20);
    const auto ts = TimeScale::explicit_points(pts);
    for (int k = 1; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l)
        for (std::size_t t = 0; t < pts.size(); t += 3) {
          const double ref = std::abs(h_poly(ts, k + l, pts[t], pts[5]));
          CHECK(convolution_residual(ts, k, l, pts[5], pts[t]) <= 1e-10 * std::max(1.0, ref));
        }
  }
}

TEST_CASE("lemma inequality report") {
  const GridWindow z(kZ, 0, 30);
  const auto rep = check_lemma_inequalities(z, 4, 4, 2.0);
  CHECK(rep.all_hold());
  for (const auto& l : rep.lemmas) CHECK(l.checked > 0);

  // k = 0 rows alone: every inequality collapses to equality
  const auto zero = check_lemma_inequalities(z, 0, 0, 2.0);
  CHECK(zero.lemmas[0].min_slack == 0.0);
  CHECK(zero.lemmas[1].min_slack == 0.0);
  CHECK(zero.lemmas[3].min_slack == 0.0);

  // (-1) h_1(2,5) = 3 = h_1(5,2)
  CHECK(-h_poly(kZ, 1, 2.0, 5.0) == 3.0);
  CHECK(h_poly(kZ, 1, 5.0, 2.0) == 3.0);

  // On 2^Z: h_2(1,4) = -[1*(1-4) + 2*(2-4)] = 7 against h_2(4,1) = 2.
  CHECK(h_poly(kTwoZ, 2, 1.0, 4.0) == 7.0);
  CHECK(h_closed_geometric(2.0, 2, 1.0, 4.0) == 7.0);
  const GridWindow two(kTwoZ, 0, 2);
  const auto g = check_lemma_inequalities(two, 2, 0, 1.0);
  CHECK(g.all_hold());
}

TEST_CASE("limit ratios on q^Z") {
  CHECK(limit_ratio_check(2.0, 0, LimitDirection::LargeT).estimate == 1.0);
  const auto one = limit_ratio_check(2.0, 1, LimitDirection::LargeT);
  CHECK(one.limit == 1.0);
  CHECK(std::abs(one.estimate - 1.0) < 1e-5);
  const auto two = limit_ratio_check(2.0, 2, LimitDirection::LargeT);
  CHECK(two.limit == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(two.estimate / two.limit - 1.0) < 0.02);
  for (int n = 1; n <= 4; ++n) {
    const auto s = limit_ratio_check(2.0, n, LimitDirection::LargeS);
    CHECK(std::abs(s.estimate / s.limit - 1.0) < 0.02);
  }
}
