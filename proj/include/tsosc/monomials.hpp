#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tsosc/calculus.hpp"
#include "tsosc/monomial_rows.hpp"
#include "tsosc/scale.hpp"

namespace tsosc {

// Generalized monomials h_k (or g_k) tabulated over a window with one
// argument pinned at the window point `base` and k = 0..max_k.
class MonomialTable {
 public:
  MonomialTable(GridWindow window, std::size_t base, int max_k, Varying varying = Varying::First,
                Family family = Family::H);

  const GridWindow& window() const noexcept { return window_; }
  std::size_t base() const noexcept { return base_; }
  int max_k() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  Varying varying() const noexcept { return varying_; }
  Family family() const noexcept { return family_; }

  double operator()(int k, std::size_t i) const { return rows_[static_cast<std::size_t>(k)][i]; }
  std::span<const double> row(int k) const { return rows_.at(static_cast<std::size_t>(k)); }

 private:
  GridWindow window_;
  std::size_t base_;
  Varying varying_;
  Family family_;
  std::vector<std::vector<double>> rows_;
};

double h_poly(const TimeScale& ts, int k, double t, double s);
double g_poly(const TimeScale& ts, int k, double t, double s);

// Gamma_q(n) = prod_{i=1}^{n-1} (q^i - 1)/(q - 1); q = 1 gives (n-1)!.
double q_gamma(double q, int n);

// Product forms of h_n on hZ and on q^Z. Both carry 1/Gamma_q(n+1)
// (n! on hZ), the normalization that agrees with the recursion.
double h_closed_uniform(double h, int n, double t, double s);
double h_closed_geometric(double q, int n, double t, double s);

// The parts can exceed f(t) by many orders of magnitude and cancel in the
// sum, so they are kept in extended precision.
struct TaylorParts {
  long double sum_part;
  long double remainder_part;
};
// Taylor expansion of f about s evaluated at t, split into the polynomial
// part and the integral remainder.
TaylorParts taylor_eval(const GridFn& f, int n, double s, double t);

// |h_{k+l}(t,s) - int_s^t h_{k-1}(t, sigma(eta)) h_l(eta, s) d eta|
double convolution_residual(const TimeScale& ts, int k, int l, double s, double t);

enum class Lemma { ArgumentSwap, Product, Convolution, GDominatesH };
std::string_view to_string(Lemma lemma) noexcept;

struct LemmaSlack {
  Lemma lemma;
  double min_slack = 0.0;         // min LHS - RHS
  double min_scaled_slack = 0.0;  // min (LHS - RHS) / max(1, |RHS|)
  int k = 0;
  int l = 0;
  double t = 0.0;                 // where min_scaled_slack is attained
  std::size_t checked = 0;
  bool holds = true;              // min_scaled_slack >= -tolerance
};

struct LemmaReport {
  double s = 0.0;
  double tolerance = 1e-12;
  std::array<LemmaSlack, 4> lemmas{};
  bool all_hold() const noexcept;
};

// Checks, for every window point t >= s and all k <= kmax, l <= lmax:
//   (-1)^k h_k(s,t) >= h_k(t,s)
//   h_k(t,s) h_l(t,s) >= h_{k+l}(t,s)
//   (-1)^l int_s^t h_{k-1}(t, sigma(eta)) h_l(eta, t) d eta >= h_{k+l}(t,s)   (k >= 1)
//   g_k(t,s) >= h_k(t,s)
LemmaReport check_lemma_inequalities(const GridWindow& window, int kmax, int lmax, double s,
                                     double tolerance = 1e-12);

enum class LimitDirection { LargeT, LargeS };

struct LimitRatio {
  double estimate;  // ratio at the largest point
  double limit;     // closed-form asymptote
  double at;        // q^exponent
};
// h_n(q^E, 1)/q^{E n} (LargeT) or h_n(1, q^E)/q^{E n} (LargeS) on 1 * q^Z.
LimitRatio limit_ratio_check(double q, int n, LimitDirection direction, int exponent = 20);

}  // namespace tsosc
