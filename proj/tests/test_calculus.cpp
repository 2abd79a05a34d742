#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "support/expect.hpp"
#include "tsosc/calculus.hpp"
#include "tsosc/error.hpp"

using namespace tsosc;

namespace {
using testing::error_code;

const auto kZ = TimeScale::uniform(1.0, 0.0);
const auto kTwoZ = TimeScale::geometric(2.0, 1.0);
}  // namespace

TEST_CASE("delta derivative") {
  const auto sq = GridFn::sample(GridWindow(kZ, 0, 10), [](double t) { return t * t; });
  CHECK(delta_derivative(sq, 3.0) == 7.0);
  CHECK(error_code([&] { delta_derivative(sq, 10.0); }) == Errc::AtRightEndpoint);

  const auto lin = GridFn::sample(GridWindow(kTwoZ, 0, 12), [](double t) { return t; });
  for (std::size_t i = 0; i + 1 < lin.size(); ++i) CHECK(delta_derivative(lin, lin.point(i)) == 1.0);
}

TEST_CASE("higher-order delta derivative") {
  const auto sq = GridFn::sample(GridWindow(kZ, 0, 10), [](double t) { return t * t; });
  const auto same = delta_derivative_n(sq, 0);
  CHECK(same.size() == sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(same[i] == sq[i]);

  const auto second = delta_derivative_n(sq, 2);
  CHECK(second.size() == 9);
  for (std::size_t i = 0; i < second.size(); ++i) CHECK(second[i] == 2.0);

  const auto short_fn = GridFn(GridWindow(kZ, 0, 2), {1, 2, 3});
  CHECK(error_code([&] { delta_derivative_n(short_fn, 3); }) == Errc::WindowTooShort);
}

TEST_CASE("delta integral") {
  const auto one = GridFn::sample(GridWindow(kZ, 0, 10), [](double) { return 1.0; });
  CHECK(delta_integral(one, 2.0, 5.0) == 3.0);
  CHECK(delta_integral(one, 5.0, 2.0) == -3.0);
  CHECK(delta_integral(one, 4.0, 4.0) == 0.0);
  CHECK(error_code([&] { delta_integral(one, 4.0, 40.0); }) == Errc::OutOfWindow);

  // (q - 1) * sum_j f(q^j) q^j over j = 0, 1, 2 with f = 1/eta is 3
  const auto inv = GridFn::sample(GridWindow(kTwoZ, 0, 5), [](double t) { return 1.0 / t; });
  CHECK(delta_integral(inv, 1.0, 8.0) == 3.0);
}

TEST_CASE("positive regressivity") {
  const GridWindow w(kZ, 0, 10);
  CHECK(is_positively_regressive(GridFn::sample(w, [](double) { return 0.0; }), 0.0, 10.0));
  CHECK_FALSE(is_positively_regressive(GridFn::sample(w, [](double) { return -1.0; }), 0.0, 10.0));

  const GridWindow g(kTwoZ, 0, 5);
  const auto weak = GridFn::sample(g, [](double t) { return t == 4.0 ? -0.2 : 0.0; });
  const auto strong = GridFn::sample(g, [](double t) { return t == 4.0 ? -0.3 : 0.0; });
  CHECK(is_positively_regressive(weak, 4.0, 8.0));    // 1 + 4(-0.2) = 0.2
  CHECK_FALSE(is_positively_regressive(strong, 4.0, 8.0));  // 1 + 4(-0.3) < 0
}

TEST_CASE("generalized exponential") {
  const GridWindow w(kZ, 0, 12);
  CHECK(exp_fn(GridFn::sample(w, [](double) { return 0.0; }), 9.0, 2.0) == 1.0);
  const double c = 0.37;
  const auto pc = GridFn::sample(w, [c](double) { return c; });
  CHECK(exp_fn(pc, 9.0, 2.0) == doctest::Approx(std::pow(1.0 + c, 7.0)).epsilon(1e-14));
  CHECK(exp_fn(pc, 3.0, 3.0) == 1.0);
  CHECK(error_code([&] { exp_fn(GridFn::sample(w, [](double) { return -1.5; }), 5.0, 2.0); }) ==
        Errc::NotRegressive);
}

TEST_CASE("calculus identities on random explicit scales") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int rep = 0; rep < 40; ++rep) {
    const auto pts = oracle::random_points(rng, 40);
    const GridWindow w(TimeScale::explicit_points(pts), 0, 39);
    std::vector<double> fv(w.size());
    for (auto& v : fv) v = val(rng);
    const GridFn f(w, fv);
    const auto df = delta_derivative_n(f, 1);

    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      // simple useful formula
      CHECK(f[i + 1] == doctest::Approx(f[i] + w.mu(i) * df[i]).epsilon(1e-13));
    }
    // additivity and the fundamental theorem
    std::uniform_int_distribution<std::size_t> idx(0, 38);
    std::size_t a = idx(rng), b = idx(rng), c = idx(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double ac = delta_integral(f, pts[a], pts[c]);
    const double split = delta_integral(f, pts[a], pts[b]) + delta_integral(f, pts[b], pts[c]);
    CHECK(std::abs(ac - split) <= 1e-12 * std::max(1.0, std::abs(ac)));
    const double ft = delta_integral(df, pts[a], pts[c]);
    CHECK(ft == doctest::Approx(f[c] - f[a]).epsilon(1e-12));

    // e_p(., s) solves y^Delta = p y, y(s) = 1
    std::uniform_real_distribution<double> pv(-0.3, 2.0);
    std::vector<double> p(w.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = pv(rng) / std::max(1.0, w.mu(std::min(i, w.size() - 2)));
    const GridFn pf(w, p);
    double prev = exp_fn(pf, pts[a], pts[a]);
    CHECK(prev == 1.0);
    for (std::size_t i = a; i + 1 < w.size(); ++i) {
      const double next = exp_fn(pf, pts[i + 1], pts[a]);
      CHECK((next - prev) / w.mu(i) == doctest::Approx(p[i] * prev).epsilon(1e-10));
      prev = next;
    }
  }
}
