#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qam/config.hpp"
#include "qam/grid_function.hpp"
#include "qam/interval.hpp"

namespace qam {

enum class Direction { Increasing, Decreasing };

enum class Family { Power, Log, Exponential, Affine, Piecewise, Grid };

std::string to_string(Family family);

/// A non-differentiability point of a piecewise generator. Slopes are the
/// magnitudes of the one-sided derivatives at z.
struct Kink {
  double z;
  double left_slope;
  double right_slope;
};

using KinkSpec = std::vector<Kink>;

/// Checks ordering, interior placement and positivity of a kink list.
void validate_kinks(const KinkSpec& kinks, const Interval& interval);

struct Descriptor;

/// Continuous strictly monotone function on a compact interval. Immutable;
/// copies share state and may be evaluated concurrently.
class Generator {
 public:
  /// x^p for p != 0, ln x for p == 0. Requires interval.lo() > 0.
  static Generator power(double p, Interval interval);
  static Generator log(Interval interval);
  /// e^{p x}, p != 0.
  static Generator exponential(double p, Interval interval);
  /// alpha * base + beta, alpha != 0. Nested affine maps are flattened.
  static Generator affine(const Generator& base, double alpha, double beta);
  /// `base` rescaled on each segment so that the one-sided slope ratio at
  /// every kink matches right_slope / left_slope. The first segment is `base`.
  static Generator piecewise(const Generator& base, const KinkSpec& kinks);
  /// Segment form: value = scale[k] * base + offset[k] on the k-th segment
  /// delimited by `breaks`. Continuity at breaks is required.
  static Generator piecewise_segments(const Generator& base, std::vector<double> breaks,
                                      std::vector<double> scale, std::vector<double> offset);
  /// Monotone piecewise-linear interpolant of the samples.
  static Generator grid(GridFunction values);
  /// Monotone cubic Hermite interpolant of values and derivative samples.
  static Generator grid(GridFunction values, GridFunction slopes);

  Family family() const noexcept;
  const Descriptor& descriptor() const noexcept;
  const Interval& interval() const noexcept;
  Direction direction() const noexcept;
  bool increasing() const noexcept { return direction() == Direction::Increasing; }

  double value(double x) const;
  /// First derivative; the right derivative at kinks (left at hi).
  double derivative(double x) const;
  double left_derivative(double x) const;
  double right_derivative(double x) const;
  double second_derivative(double x) const;

  /// False only for grid generators carrying no derivative samples.
  bool has_derivative() const noexcept;
  bool has_second_derivative() const noexcept;
  /// No kinks and a continuous derivative representation.
  bool is_c1() const noexcept;

  /// Kinks with one-sided slope magnitudes (empty unless piecewise).
  KinkSpec kinks() const;

  /// Monotone bisection on the whole interval. Runs until the bracket
  /// collapses to adjacent doubles (at most 200 halvings), which is tighter
  /// than Tolerances::tol_inv.
  double inverse(double y) const;
  /// Bisection restricted to [a, b] within the interval; y must lie between
  /// value(a) and value(b).
  double inverse_within(double y, double a, double b) const;

  struct Impl;

 private:
  explicit Generator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Generator make(Descriptor desc, Interval interval, bool validate);

  std::shared_ptr<const Impl> impl_;
};

struct PowerDesc {
  double p;
};
struct LogDesc {};
struct ExpDesc {
  double p;
};
struct AffineDesc {
  Generator base;
  double alpha;
  double beta;
};
struct PiecewiseDesc {
  Generator base;
  std::vector<double> breaks;
  std::vector<double> scale;
  std::vector<double> offset;
};
struct GridDesc {
  GridFunction values;
  std::optional<GridFunction> slopes;
  std::vector<bool> hermite;  // per cell: cubic Hermite admissible
};

struct Descriptor {
  std::variant<PowerDesc, LogDesc, ExpDesc, AffineDesc, PiecewiseDesc, GridDesc> node;
};

/// Affine representative with value 0 at lo and 1 at hi (hence increasing).
Generator normalize_affine(const Generator& g);

/// Flips decreasing generators (f -> -f); the mean is unchanged.
Generator canonical_increasing(const Generator& g);

/// Sup-norm distance of the normalized generators on an n-point grid.
double normalized_distance(const Generator& f, const Generator& g,
                           std::size_t grid_n = kDefaultGrid);

/// Affine equivalence: normalized sup-distance within tol.
bool equivalent(const Generator& f, const Generator& g, double tol = Tolerances{}.tol_eq,
                std::size_t grid_n = kDefaultGrid);

/// Samples value and derivative of g on its n-point grid.
GridFunction sample_values(const Generator& g, std::size_t n);
GridFunction sample_derivatives(const Generator& g, std::size_t n);

}  // namespace qam
