#include "tsosc/monomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsosc/error.hpp"

namespace tsosc {

MonomialTable::MonomialTable(GridWindow window, std::size_t base, int max_k, Varying varying, Family family)
    : window_(std::move(window)), base_(base), varying_(varying), family_(family) {
  if (max_k < 0) fail(Errc::NegativeOrder, "monomials::MonomialTable", "order must be nonnegative");
  if (base >= window_.size()) fail(Errc::OutOfWindow, "monomials::MonomialTable", "base index outside window");
  if (family == Family::G && varying == Varying::Second)
    fail(Errc::InvalidArgument, "monomials::MonomialTable", "g_k is only tabulated in its first argument");
  rows_ = detail::monomial_rows<double>(window_.points(), base, max_k, varying, family);
}

namespace {

#ifdef __SIZEOF_FLOAT128__
using Wide = __float128;
#else
using Wide = long double;
#endif

double poly_value(const TimeScale& ts, int k, double t, double s, Family family, const char* where) {
  if (k < 0) fail(Errc::NegativeOrder, where, "order must be nonnegative");
  const auto kt = ts.try_index_of(t);
  const auto ks = ts.try_index_of(s);
  if (!kt || !ks) fail(Errc::OutOfWindow, where, "t and s must be scale points");
  if (k == 0) return 1.0;
  GridWindow w(ts, std::min(*kt, *ks), std::max(*kt, *ks));
  const std::size_t base = static_cast<std::size_t>(*ks - w.start_index());
  const std::size_t at = static_cast<std::size_t>(*kt - w.start_index());
  auto rows = detail::monomial_rows<double>(w.points(), base, k, Varying::First, family);
  return rows[static_cast<std::size_t>(k)][at];
}

}  // namespace

double h_poly(const TimeScale& ts, int k, double t, double s) {
  return poly_value(ts, k, t, s, Family::H, "monomials::h_poly");
}

double g_poly(const TimeScale& ts, int k, double t, double s) {
  return poly_value(ts, k, t, s, Family::G, "monomials::g_poly");
}

double q_gamma(double q, int n) {
  if (n < 1) fail(Errc::BadOrder, "monomials::q_gamma", "n must be a positive integer");
  if (!(q >= 1.0)) fail(Errc::InvalidArgument, "monomials::q_gamma", "q must be >= 1");
  double prod = 1.0;
  for (int i = 1; i < n; ++i) {
    // [i]_q = 1 + q + ... + q^{i-1}; summed directly to stay exact near q = 1
    double bracket = 0.0;
    double power = 1.0;
    for (int j = 0; j < i; ++j) {
      bracket += power;
      power *= q;
    }
    prod *= bracket;
  }
  return prod;
}

double h_closed_uniform(double h, int n, double t, double s) {
  if (n < 0) fail(Errc::NegativeOrder, "monomials::h_closed_uniform", "order must be nonnegative");
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= (t - i * h - s) / static_cast<double>(i + 1);
  return prod;
}

double h_closed_geometric(double q, int n, double t, double s) {
  if (n < 0) fail(Errc::NegativeOrder, "monomials::h_closed_geometric", "order must be nonnegative");
  double prod = 1.0;
  double shifted = s;  // sigma^i(s) = q^i s
  for (int i = 0; i < n; ++i) {
    prod *= t - shifted;
    shifted *= q;
  }
  return prod / q_gamma(q, n + 1);
}

TaylorParts taylor_eval(const GridFn& f, int n, double s, double t) {
  constexpr const char* where = "monomials::taylor_eval";
  if (n < 1) fail(Errc::BadOrder, where, "expansion order must be positive");
  const auto& w = f.window();
  const auto is = w.try_index_of(s);
  const auto it = w.try_index_of(t);
  if (!is || !it) fail(Errc::OutOfWindow, where, "s and t must be window points");
  const std::size_t lo = std::min(*is, *it);
  const std::size_t hi = std::max(*is, *it);
  const auto order = static_cast<std::size_t>(n);
  if (hi + order > f.size())
    fail(Errc::WindowTooShort, where,
         "f^{Delta^" + std::to_string(n) + "} is not available up to " + std::to_string(t));

  // The two parts cancel to f(t) and each can be orders of magnitude larger,
  // so everything below runs in a wider type restricted to [lo, hi + n].
  const std::size_t span = hi - lo + order + 1;
  std::vector<Wide> pts(span);
  std::vector<std::vector<Wide>> derivs(order + 1);
  for (std::size_t i = 0; i < span; ++i) pts[i] = w.point(lo + i);
  derivs[0].resize(span);
  for (std::size_t i = 0; i < span; ++i) derivs[0][i] = f[lo + i];
  for (std::size_t k = 1; k <= order; ++k) {
    const auto& prev = derivs[k - 1];
    auto& next = derivs[k];
    next.resize(prev.size() - 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = (prev[i + 1] - prev[i]) / (pts[i + 1] - pts[i]);
  }

  const std::size_t ls = *is - lo;
  const std::size_t lt = *it - lo;
  const std::span<const Wide> view(pts.data(), hi - lo + 1);
  const auto about_s = detail::monomial_rows<Wide>(view, ls, n - 1, Varying::First, Family::H);
  Wide sum_part = 0;
  for (std::size_t k = 0; k < order; ++k) sum_part += about_s[k][lt] * derivs[k][ls];

  const auto from_t = detail::monomial_rows<Wide>(view, lt, n - 1, Varying::Second, Family::H);
  Wide rem = 0;
  for (std::size_t eta = 0; eta + lo < hi; ++eta)
    rem += (pts[eta + 1] - pts[eta]) * from_t[order - 1][eta + 1] * derivs[order][eta];
  if (*is > *it) rem = -rem;
  return {static_cast<long double>(sum_part), static_cast<long double>(rem)};
}

double convolution_residual(const TimeScale& ts, int k, int l, double s, double t) {
  constexpr const char* where = "monomials::convolution_residual";
  if (k < 1 || l < 0) fail(Errc::NegativeOrder, where, "requires k >= 1 and l >= 0");
  const auto kt = ts.try_index_of(t);
  const auto ks = ts.try_index_of(s);
  if (!kt || !ks) fail(Errc::OutOfWindow, where, "t and s must be scale points");
  GridWindow w(ts, std::min(*kt, *ks), std::max(*kt, *ks));
  const std::size_t is = static_cast<std::size_t>(*ks - w.start_index());
  const std::size_t it = static_cast<std::size_t>(*kt - w.start_index());
  const MonomialTable about_s(w, is, k + l, Varying::First);
  const MonomialTable from_t(w, it, k - 1, Varying::Second);
  const double lhs = about_s(k + l, it);
  double rhs = 0.0;
  for (std::size_t eta = std::min(is, it); eta < std::max(is, it); ++eta)
    rhs += w.mu(eta) * from_t(k - 1, eta + 1) * about_s(l, eta);
  if (it < is) rhs = -rhs;
  return std::abs(lhs - rhs);
}

std::string_view to_string(Lemma lemma) noexcept {
  switch (lemma) {
    case Lemma::ArgumentSwap: return "argument-swap";
    case Lemma::Product: return "product";
    case Lemma::Convolution: return "convolution";
    case Lemma::GDominatesH: return "g-dominates-h";
  }
  return "?";
}

bool LemmaReport::all_hold() const noexcept {
  return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaSlack& l) { return l.holds; });
}

namespace {

void record(LemmaSlack& slot, double lhs, double rhs, int k, int l, double t, double tolerance) {
  const double slack = lhs - rhs;
  const double scaled = slack / std::max(1.0, std::abs(rhs));
  if (slot.checked == 0 || slack < slot.min_slack) slot.min_slack = slack;
  if (slot.checked == 0 || scaled < slot.min_scaled_slack) {
    slot.min_scaled_slack = scaled;
    slot.k = k;
    slot.l = l;
    slot.t = t;
  }
  ++slot.checked;
  slot.holds = slot.min_scaled_slack >= -tolerance;
}

}  // namespace

LemmaReport check_lemma_inequalities(const GridWindow& window, int kmax, int lmax, double s, double tolerance) {
  constexpr const char* where = "monomials::check_lemma_inequalities";
  if (kmax < 0 || lmax < 0) fail(Errc::NegativeOrder, where, "orders must be nonnegative");
  const std::size_t is = window.index_of(s);
  const auto& pts = window.points();
  const std::size_t n = window.size();

  LemmaReport report;
  report.s = pts[is];
  report.tolerance = tolerance;
  report.lemmas = {LemmaSlack{Lemma::ArgumentSwap}, LemmaSlack{Lemma::Product}, LemmaSlack{Lemma::Convolution},
                   LemmaSlack{Lemma::GDominatesH}};
  auto& swap = report.lemmas[0];
  auto& product = report.lemmas[1];
  auto& conv = report.lemmas[2];
  auto& dominate = report.lemmas[3];

  const MonomialTable h_about_s(window, is, kmax + lmax, Varying::First);
  const MonomialTable h_from_s(window, is, kmax, Varying::Second);  // h_k(s, p)
  const MonomialTable g_about_s(window, is, kmax, Varying::First, Family::G);

  for (std::size_t it = is; it < n; ++it) {
    const double t = pts[it];
    for (int k = 0; k <= kmax; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      record(swap, sign * h_from_s(k, it), h_about_s(k, it), k, 0, t, tolerance);
      record(dominate, g_about_s(k, it), h_about_s(k, it), k, 0, t, tolerance);
      for (int l = 0; l <= lmax; ++l)
        record(product, h_about_s(k, it) * h_about_s(l, it), h_about_s(k + l, it), k, l, t, tolerance);
    }
    if (kmax < 1) continue;
    // Tables over [s, t] with the pinned argument at t.
    const std::span<const double> seg(pts.data() + is, it - is + 1);
    const std::size_t local_t = it - is;
    const auto from_t = detail::monomial_rows<double>(seg, local_t, kmax - 1, Varying::Second, Family::H);
    const auto about_t = detail::monomial_rows<double>(seg, local_t, lmax, Varying::First, Family::H);
    for (int k = 1; k <= kmax; ++k) {
      for (int l = 0; l <= lmax; ++l) {
        double integral = 0.0;
        for (std::size_t eta = 0; eta < local_t; ++eta)
          integral += (seg[eta + 1] - seg[eta]) * from_t[static_cast<std::size_t>(k - 1)][eta + 1] *
                      about_t[static_cast<std::size_t>(l)][eta];
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        record(conv, sign * integral, h_about_s(k + l, it), k, l, t, tolerance);
      }
    }
  }
  return report;
}

LimitRatio limit_ratio_check(double q, int n, LimitDirection direction, int exponent) {
  constexpr const char* where = "monomials::limit_ratio_check";
  if (n < 0) fail(Errc::NegativeOrder, where, "order must be nonnegative");
  if (exponent < 1) fail(Errc::InvalidArgument, where, "exponent must be positive");
  const auto ts = TimeScale::geometric(q, 1.0);
  const double big = ts.point(exponent);
  if (n == 0) return {1.0, 1.0, big};
  const double scale = std::pow(big, n);
  const double gamma = q_gamma(q, n + 1);
  if (direction == LimitDirection::LargeT) return {h_poly(ts, n, big, 1.0) / scale, 1.0 / gamma, big};
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return {h_poly(ts, n, 1.0, big) / scale, sign * std::pow(q, 0.5 * n * (n - 1)) / gamma, big};
}

}  // namespace tsosc
