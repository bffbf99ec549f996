#pragma once

#include <cstddef>

namespace qam {

/// Compact working interval [lo, hi] with lo < hi, both finite.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }

  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  bool interior(double x) const noexcept { return x > lo_ && x < hi_; }

  /// i-th node of the uniform n-point grid; node(n-1) is exactly hi.
  double node(std::size_t i, std::size_t n) const noexcept;
  double step(std::size_t n) const noexcept { return (hi_ - lo_) / static_cast<double>(n - 1); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

}  // namespace qam
