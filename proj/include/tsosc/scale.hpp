#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsosc {

// Discrete time scales. Uniform and geometric scales are enumerated by a
// signed integer index from their anchor (index 0); explicit scales by
// position in their point list. Points are always recomputed from the index,
// never accumulated, so long grids do not drift.
class TimeScale {
 public:
  enum class Kind { Uniform, Geometric, Explicit };

  // hZ shifted by `anchor`. `approximates_real` marks a fine grid standing in
  // for the real line; the stepper refuses such scales unless asked.
  static TimeScale uniform(double h, double anchor = 0.0, bool approximates_real = false);
  // anchor * q^Z
  static TimeScale geometric(double q, double anchor = 1.0);
  static TimeScale explicit_points(std::vector<double> points);

  Kind kind() const noexcept { return kind_; }
  bool approximates_real() const noexcept { return approximates_real_; }
  double step() const noexcept { return param_; }     // Uniform: h
  double ratio() const noexcept { return param_; }    // Geometric: q
  double anchor() const noexcept { return anchor_; }
  const std::vector<double>& points() const;          // Explicit only

  std::int64_t min_index() const noexcept;
  std::int64_t max_index() const noexcept;
  bool has_index(std::int64_t k) const noexcept { return k >= min_index() && k <= max_index(); }

  double point(std::int64_t k) const;
  // Index of the scale point equal to t (to rounding); OutOfWindow otherwise.
  std::int64_t index_of(double t) const;
  std::optional<std::int64_t> try_index_of(double t) const;
  // Largest index whose point is <= v, if any.
  std::optional<std::int64_t> floor_index(double v) const;
  // Smallest index whose point is >= v, if any.
  std::optional<std::int64_t> ceil_index(double v) const;

  std::string describe() const;

  friend bool operator==(const TimeScale& a, const TimeScale& b);

 private:
  TimeScale() = default;

  Kind kind_ = Kind::Uniform;
  double param_ = 1.0;
  double anchor_ = 0.0;
  bool approximates_real_ = false;
  std::shared_ptr<const std::vector<double>> explicit_;
};

struct JumpData {
  double sigma;
  double rho;
  double mu;
};

// Forward jump, backward jump and graininess at the scale point t.
JumpData jump_data(const TimeScale& ts, double t);
// All scale points in [a, b], increasing.
std::vector<double> grid(const TimeScale& ts, double a, double b);
// Largest scale point <= v.
double snap_down(const TimeScale& ts, double v);

// A contiguous run of scale points [start_index, end_index]. Point values are
// materialized once at construction; the window is immutable afterwards.
class GridWindow {
 public:
  GridWindow(TimeScale scale, std::int64_t start_index, std::int64_t end_index);
  // Window spanning every scale point in [a, b].
  static GridWindow covering(const TimeScale& scale, double a, double b);
  // `count` points starting at the scale point t.
  static GridWindow from_point(const TimeScale& scale, double t, std::size_t count);

  const TimeScale& scale() const noexcept { return scale_; }
  std::int64_t start_index() const noexcept { return start_; }
  std::int64_t end_index() const noexcept { return end_; }
  std::size_t size() const noexcept { return points_->size(); }

  double point(std::size_t i) const { return (*points_)[i]; }
  const std::vector<double>& points() const noexcept { return *points_; }
  double front() const { return points_->front(); }
  double back() const { return points_->back(); }
  // Graininess at local index i; requires i + 1 < size().
  double mu(std::size_t i) const { return (*points_)[i + 1] - (*points_)[i]; }

  // Local index of the point t; OutOfWindow when t is not a window point.
  std::size_t index_of(double t) const;
  std::optional<std::size_t> try_index_of(double t) const;
  // Local index of the largest window point <= v; BelowWindow if none.
  std::size_t floor_index(double v) const;

  // Jump data inside the window; endpoint errors when a neighbour is missing.
  JumpData jump_data(std::size_t i) const;

  // Sub-window of local indices [first, last].
  GridWindow slice(std::size_t first, std::size_t last) const;
  // Drop `k` points at the right end.
  GridWindow shorten(std::size_t k) const;

 private:
  TimeScale scale_;
  std::int64_t start_;
  std::int64_t end_;
  std::shared_ptr<const std::vector<double>> points_;
};

}  // namespace tsosc
