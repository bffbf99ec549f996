#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qam/interval.hpp"

namespace qam {

using RealFunction = std::function<double(double)>;

/// Uniform samples of a scalar function on an interval.
class GridFunction {
 public:
  GridFunction(Interval interval, std::vector<double> values);

  /// Samples `f` at the n uniform nodes of `interval`.
  static GridFunction sample(Interval interval, std::size_t n, const RealFunction& f);

  const Interval& interval() const noexcept { return interval_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double node(std::size_t i) const noexcept { return interval_.node(i, values_.size()); }
  double step() const noexcept { return interval_.step(values_.size()); }

  /// Index of the cell [node(i), node(i+1)] holding x (clamped to the last cell).
  std::size_t cell_of(double x) const noexcept;

  /// Piecewise-linear interpolation; exact at nodes.
  double interpolate(double x) const;

  /// Cumulative composite trapezoid, zero at `anchor` (which need not be a node).
  GridFunction cumulative_trapezoid(double anchor) const;
  /// Fourth-order cumulative integral (cubic Lagrange rule per cell), zero at
  /// `anchor`. Needs at least 4 nodes.
  GridFunction cumulative_integral(double anchor) const;

  /// Keeps every `factor`-th node; (size-1) must be divisible by factor.
  GridFunction downsample(std::size_t factor) const;

  double sup_distance(const GridFunction& other) const;

 private:
  Interval interval_;
  std::vector<double> values_;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> xs) noexcept;

}  // namespace qam
