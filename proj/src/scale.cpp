#include "tsosc/scale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsosc/error.hpp"

namespace tsosc {

namespace {

constexpr std::int64_t kUniformIndexLimit = std::int64_t{1} << 40;
constexpr std::int64_t kMaxWindowPoints = 50'000'000;

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

TimeScale TimeScale::uniform(double h, double anchor, bool approximates_real) {
  if (!(h > 0.0) || !std::isfinite(h) || !std::isfinite(anchor))
    fail(Errc::InvalidArgument, "scale::uniform", "step h must be positive and finite");
  TimeScale ts;
  ts.kind_ = Kind::Uniform;
  ts.param_ = h;
  ts.anchor_ = anchor;
  ts.approximates_real_ = approximates_real;
  return ts;
}

TimeScale TimeScale::geometric(double q, double anchor) {
  if (!(q > 1.0) || !std::isfinite(q))
    fail(Errc::InvalidArgument, "scale::geometric", "ratio q must be > 1");
  if (!(anchor > 0.0) || !std::isfinite(anchor))
    fail(Errc::InvalidArgument, "scale::geometric", "anchor must be positive");
  TimeScale ts;
  ts.kind_ = Kind::Geometric;
  ts.param_ = q;
  ts.anchor_ = anchor;
  return ts;
}

TimeScale TimeScale::explicit_points(std::vector<double> points) {
  if (points.size() < 2)
    fail(Errc::InvalidArgument, "scale::explicit", "needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]))
      fail(Errc::InvalidArgument, "scale::explicit", "points must be finite");
    if (i > 0 && !(points[i] > points[i - 1]))
      fail(Errc::InvalidArgument, "scale::explicit", "points must be strictly increasing");
  }
  TimeScale ts;
  ts.kind_ = Kind::Explicit;
  ts.anchor_ = points.front();
  ts.explicit_ = std::make_shared<const std::vector<double>>(std::move(points));
  return ts;
}

const std::vector<double>& TimeScale::points() const {
  if (kind_ != Kind::Explicit)
    fail(Errc::InvalidArgument, "scale::points", "only explicit scales carry a point list");
  return *explicit_;
}

std::int64_t TimeScale::min_index() const noexcept {
  switch (kind_) {
    case Kind::Uniform: return -kUniformIndexLimit;
    case Kind::Geometric:
      return static_cast<std::int64_t>(std::ceil((-700.0 - std::log(anchor_)) / std::log(param_)));
    case Kind::Explicit: return 0;
  }
  return 0;
}

std::int64_t TimeScale::max_index() const noexcept {
  switch (kind_) {
    case Kind::Uniform: return kUniformIndexLimit;
    case Kind::Geometric:
      return static_cast<std::int64_t>(std::floor((700.0 - std::log(anchor_)) / std::log(param_)));
    case Kind::Explicit: return static_cast<std::int64_t>(explicit_->size()) - 1;
  }
  return 0;
}

double TimeScale::point(std::int64_t k) const {
  if (!has_index(k))
    fail(Errc::OutOfWindow, "scale::point", "index " + std::to_string(k) + " outside " + describe());
  switch (kind_) {
    case Kind::Uniform: return anchor_ + static_cast<double>(k) * param_;
    case Kind::Geometric: return anchor_ * std::pow(param_, static_cast<double>(k));
    case Kind::Explicit: return (*explicit_)[static_cast<std::size_t>(k)];
  }
  return 0.0;
}

namespace {

// Matching tolerance for "v is this point", scaled to the local spacing.
double hit_tolerance(const TimeScale& ts, double v) {
  switch (ts.kind()) {
    case TimeScale::Kind::Uniform: return 1e-9 * ts.step() + 1e-13 * std::abs(v);
    case TimeScale::Kind::Geometric: return 1e-9 * (ts.ratio() - 1.0) * std::abs(v);
    case TimeScale::Kind::Explicit: return 1e-12 * std::max(1.0, std::abs(v));
  }
  return 0.0;
}

double clamp_index_real(double r) {
  return std::clamp(r, -9.0e15, 9.0e15);
}

}  // namespace

std::optional<std::int64_t> TimeScale::try_index_of(double t) const {
  if (!std::isfinite(t)) return std::nullopt;
  std::int64_t k = 0;
  switch (kind_) {
    case Kind::Uniform:
      k = std::llround(clamp_index_real((t - anchor_) / param_));
      break;
    case Kind::Geometric:
      if (!(t > 0.0)) return std::nullopt;
      k = std::llround(std::log(t / anchor_) / std::log(param_));
      break;
    case Kind::Explicit: {
      const auto& pts = *explicit_;
      auto it = std::lower_bound(pts.begin(), pts.end(), t);
      std::int64_t best = -1;
      double best_d = 0.0;
      for (auto cand : {it, it == pts.begin() ? it : it - 1}) {
        if (cand == pts.end()) continue;
        const double d = std::abs(*cand - t);
        if (best < 0 || d < best_d) {
          best = cand - pts.begin();
          best_d = d;
        }
      }
      if (best < 0) return std::nullopt;
      k = best;
      break;
    }
  }
  if (!has_index(k)) return std::nullopt;
  if (std::abs(point(k) - t) > hit_tolerance(*this, t)) return std::nullopt;
  return k;
}

std::int64_t TimeScale::index_of(double t) const {
  auto k = try_index_of(t);
  if (!k) fail(Errc::OutOfWindow, "scale::index_of", fmt_num(t) + " is not a point of " + describe());
  return *k;
}

std::optional<std::int64_t> TimeScale::floor_index(double v) const {
  if (std::isnan(v)) return std::nullopt;
  const double tol = hit_tolerance(*this, v);
  if (v + tol < point(min_index())) return std::nullopt;
  if (v - tol >= point(max_index())) return max_index();
  if (kind_ == Kind::Explicit) {
    const auto& pts = *explicit_;
    auto it = std::upper_bound(pts.begin(), pts.end(), v + tol);
    return static_cast<std::int64_t>(it - pts.begin()) - 1;
  }
  double r = kind_ == Kind::Uniform ? (v - anchor_) / param_ : std::log(v / anchor_) / std::log(param_);
  std::int64_t k = static_cast<std::int64_t>(std::floor(clamp_index_real(r)));
  k = std::clamp(k, min_index(), max_index());
  while (k < max_index() && point(k + 1) <= v + tol) ++k;
  while (k > min_index() && point(k) > v + tol) --k;
  return k;
}

std::optional<std::int64_t> TimeScale::ceil_index(double v) const {
  if (std::isnan(v)) return std::nullopt;
  const double tol = hit_tolerance(*this, v);
  if (v - tol > point(max_index())) return std::nullopt;
  if (v + tol <= point(min_index())) return min_index();
  if (kind_ == Kind::Explicit) {
    const auto& pts = *explicit_;
    auto it = std::lower_bound(pts.begin(), pts.end(), v - tol);
    return static_cast<std::int64_t>(it - pts.begin());
  }
  double r = kind_ == Kind::Uniform ? (v - anchor_) / param_ : std::log(v / anchor_) / std::log(param_);
  std::int64_t k = static_cast<std::int64_t>(std::ceil(clamp_index_real(r)));
  k = std::clamp(k, min_index(), max_index());
  while (k > min_index() && point(k - 1) >= v - tol) --k;
  while (k < max_index() && point(k) < v - tol) ++k;
  return k;
}

std::string TimeScale::describe() const {
  switch (kind_) {
    case Kind::Uniform:
      return std::string(approximates_real_ ? "real" : "uniform") + "(h=" + fmt_num(param_) +
             ", t0=" + fmt_num(anchor_) + ")";
    case Kind::Geometric: return "geometric(q=" + fmt_num(param_) + ", t0=" + fmt_num(anchor_) + ")";
    case Kind::Explicit:
      return "explicit(" + std::to_string(explicit_->size()) + " points in [" + fmt_num(explicit_->front()) +
             ", " + fmt_num(explicit_->back()) + "])";
  }
  return "?";
}

bool operator==(const TimeScale& a, const TimeScale& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == TimeScale::Kind::Explicit) return *a.explicit_ == *b.explicit_;
  return a.param_ == b.param_ && a.anchor_ == b.anchor_ && a.approximates_real_ == b.approximates_real_;
}

JumpData jump_data(const TimeScale& ts, double t) {
  const std::int64_t k = ts.index_of(t);
  if (!ts.has_index(k + 1))
    fail(Errc::AtRightEndpoint, "scale::jump_data", "no point after " + fmt_num(t));
  if (!ts.has_index(k - 1))
    fail(Errc::AtLeftEndpoint, "scale::jump_data", "no point before " + fmt_num(t));
  const double here = ts.point(k);
  const double sigma = ts.point(k + 1);
  return {sigma, ts.point(k - 1), sigma - here};
}

std::vector<double> grid(const TimeScale& ts, double a, double b) {
  return GridWindow::covering(ts, a, b).points();
}

double snap_down(const TimeScale& ts, double v) {
  auto k = ts.floor_index(v);
  if (!k) fail(Errc::BelowWindow, "scale::snap_down", "no scale point <= " + fmt_num(v));
  return ts.point(*k);
}

GridWindow::GridWindow(TimeScale scale, std::int64_t start_index, std::int64_t end_index)
    : scale_(std::move(scale)), start_(start_index), end_(end_index) {
  if (start_ > end_) fail(Errc::InvalidArgument, "scale::GridWindow", "start index after end index");
  if (!scale_.has_index(start_) || !scale_.has_index(end_))
    fail(Errc::OutOfWindow, "scale::GridWindow", "window indices not resolvable on " + scale_.describe());
  if (end_ - start_ + 1 > kMaxWindowPoints)
    fail(Errc::InvalidArgument, "scale::GridWindow", "window larger than 5e7 points");
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(end_ - start_ + 1));
  for (std::int64_t k = start_; k <= end_; ++k) pts.push_back(scale_.point(k));
  points_ = std::make_shared<const std::vector<double>>(std::move(pts));
}

GridWindow GridWindow::covering(const TimeScale& scale, double a, double b) {
  if (!(a <= b)) fail(Errc::InvalidArgument, "scale::grid", "requires a <= b");
  auto lo = scale.ceil_index(a);
  auto hi = scale.floor_index(b);
  if (!lo || !hi || *lo > *hi)
    fail(Errc::EmptyIntersection, "scale::grid",
         "no point of " + scale.describe() + " in [" + fmt_num(a) + ", " + fmt_num(b) + "]");
  return GridWindow(scale, *lo, *hi);
}

GridWindow GridWindow::from_point(const TimeScale& scale, double t, std::size_t count) {
  if (count == 0) fail(Errc::InvalidArgument, "scale::GridWindow", "empty window");
  const std::int64_t k = scale.index_of(t);
  return GridWindow(scale, k, k + static_cast<std::int64_t>(count) - 1);
}

std::optional<std::size_t> GridWindow::try_index_of(double t) const {
  auto k = scale_.try_index_of(t);
  if (!k || *k < start_ || *k > end_) return std::nullopt;
  return static_cast<std::size_t>(*k - start_);
}

std::size_t GridWindow::index_of(double t) const {
  auto i = try_index_of(t);
  if (!i)
    fail(Errc::OutOfWindow, "scale::GridWindow",
         fmt_num(t) + " is not a point of the window [" + fmt_num(front()) + ", " + fmt_num(back()) + "]");
  return *i;
}

std::size_t GridWindow::floor_index(double v) const {
  auto k = scale_.floor_index(v);
  if (!k || *k < start_)
    fail(Errc::BelowWindow, "scale::GridWindow", "no window point <= " + fmt_num(v));
  return static_cast<std::size_t>(std::min(*k, end_) - start_);
}

JumpData GridWindow::jump_data(std::size_t i) const {
  if (i >= size()) fail(Errc::OutOfWindow, "scale::GridWindow::jump_data", "local index out of range");
  if (i + 1 >= size()) fail(Errc::AtRightEndpoint, "scale::GridWindow::jump_data", "last window point");
  if (i == 0) fail(Errc::AtLeftEndpoint, "scale::GridWindow::jump_data", "first window point");
  return {point(i + 1), point(i - 1), point(i + 1) - point(i)};
}

GridWindow GridWindow::slice(std::size_t first, std::size_t last) const {
  if (first > last || last >= size())
    fail(Errc::OutOfWindow, "scale::GridWindow::slice", "slice outside window");
  return GridWindow(scale_, start_ + static_cast<std::int64_t>(first), start_ + static_cast<std::int64_t>(last));
}

GridWindow GridWindow::shorten(std::size_t k) const {
  if (k >= size()) fail(Errc::WindowTooShort, "scale::GridWindow::shorten", "cannot drop every point");
  return slice(0, size() - 1 - k);
}

}  // namespace tsosc
