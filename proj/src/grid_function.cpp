#include "qam/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qam/error.hpp"

namespace qam {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPositiveInterval: return "NonPositiveInterval";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Unavailable: return "Unavailable";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::SecondDerivativeUnavailable: return "SecondDerivativeUnavailable";
    case ErrorKind::IntervalMismatch: return "IntervalMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::DegenerateProbe: return "DegenerateProbe";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NoUpperBound: return "NoUpperBound";
    case ErrorKind::NoUpperBoundInCatalog: return "NoUpperBoundInCatalog";
    case ErrorKind::SlopeOrderViolation: return "SlopeOrderViolation";
    case ErrorKind::EmptyProjection: return "EmptyProjection";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorKind::InvalidArgument,
                "interval needs finite lo < hi, got [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

double Interval::node(std::size_t i, std::size_t n) const noexcept {
  if (i + 1 >= n) return hi_;
  return lo_ + static_cast<double>(i) * step(n);
}

GridFunction::GridFunction(Interval interval, std::vector<double> values)
    : interval_(interval), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "grid function needs at least 2 samples");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "grid sample is not finite");
  }
}

GridFunction GridFunction::sample(Interval interval, std::size_t n, const RealFunction& f) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 nodes");
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(interval.node(i, n));
  return GridFunction(interval, std::move(values));
}

std::size_t GridFunction::cell_of(double x) const noexcept {
  const std::size_t n = values_.size();
  const double t = (x - interval_.lo()) / step();
  if (!(t > 0.0)) return 0;
  auto i = static_cast<std::size_t>(std::floor(t));
  if (i >= n - 1) return n - 2;
  if (i > 0 && x < node(i)) --i;
  if (i + 1 < n - 1 && x >= node(i + 1)) ++i;
  return i;
}

double GridFunction::interpolate(double x) const {
  if (!interval_.contains(x)) {
    throw Error(ErrorKind::OutOfDomain, "grid interpolation outside interval");
  }
  const std::size_t i = cell_of(x);
  const double x0 = node(i);
  const double x1 = node(i + 1);
  if (x == x0) return values_[i];
  if (x == x1) return values_[i + 1];
  const double t = (x - x0) / (x1 - x0);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

GridFunction GridFunction::cumulative_trapezoid(double anchor) const {
  if (!interval_.contains(anchor)) {
    throw Error(ErrorKind::OutOfDomain, "trapezoid anchor outside interval");
  }
  const std::size_t n = values_.size();
  const double h = step();
  std::vector<double> cum(n, 0.0);
  // Running compensated sum keeps long scans from drifting.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double term = 0.5 * h * (values_[i - 1] + values_[i]);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    cum[i] = sum + carry;
  }
  // Integral from lo to anchor along the linear interpolant of the integrand.
  const std::size_t k = cell_of(anchor);
  const double xa = node(k);
  const double dx = anchor - xa;
  const double fa = values_[k];
  const double fb = interpolate(anchor);
  const double offset = cum[k] + 0.5 * dx * (fa + fb);
  for (double& c : cum) c -= offset;
  return GridFunction(interval_, std::move(cum));
}

GridFunction GridFunction::cumulative_integral(double anchor) const {
  if (!interval_.contains(anchor)) {
    throw Error(ErrorKind::OutOfDomain, "integration anchor outside interval");
  }
  const std::size_t n = values_.size();
  if (n < 4) throw Error(ErrorKind::InvalidArgument, "fourth-order rule needs 4 nodes");
  const double h = step();
  const auto& f = values_;
  // Stencil start for cell i: four nodes j..j+3 around [x_i, x_{i+1}].
  auto stencil = [n](std::size_t i) { return std::min(i == 0 ? 0 : i - 1, n - 4); };
  auto cell = [&](std::size_t i) {
    const std::size_t j = stencil(i);
    if (j + 1 == i) return h / 24.0 * (-f[j] + 13.0 * f[j + 1] + 13.0 * f[j + 2] - f[j + 3]);
    if (j == i) return h / 24.0 * (9.0 * f[j] + 19.0 * f[j + 1] - 5.0 * f[j + 2] + f[j + 3]);
    return h / 24.0 * (f[j] - 5.0 * f[j + 1] + 19.0 * f[j + 2] + 9.0 * f[j + 3]);
  };
  std::vector<double> cum(n, 0.0);
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double term = cell(i - 1);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    cum[i] = sum + carry;
  }
  // Partial cell [x_k, anchor]: two-point Gauss on the cubic interpolant.
  const std::size_t k = cell_of(anchor);
  const std::size_t j = stencil(k);
  auto cubic = [&](double x) {
    double acc = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      double w = 1.0;
      for (std::size_t b = 0; b < 4; ++b) {
        if (b != a) w *= (x - node(j + b)) / (node(j + a) - node(j + b));
      }
      acc += w * f[j + a];
    }
    return acc;
  };
  const double xa = node(k);
  const double half = 0.5 * (anchor - xa);
  const double mid = xa + half;
  const double g = half / std::sqrt(3.0);
  const double offset = cum[k] + half * (cubic(mid - g) + cubic(mid + g));
  for (double& c : cum) c -= offset;
  return GridFunction(interval_, std::move(cum));
}

GridFunction GridFunction::downsample(std::size_t factor) const {
  if (factor == 0 || (values_.size() - 1) % factor != 0) {
    throw Error(ErrorKind::InvalidArgument, "downsample factor does not divide the grid");
  }
  std::vector<double> out;
  out.reserve((values_.size() - 1) / factor + 1);
  for (std::size_t i = 0; i < values_.size(); i += factor) out.push_back(values_[i]);
  return GridFunction(interval_, std::move(out));
}

double GridFunction::sup_distance(const GridFunction& other) const {
  if (!(interval_ == other.interval_) || values_.size() != other.values_.size()) {
    throw Error(ErrorKind::IntervalMismatch, "grid functions live on different grids");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    d = std::max(d, std::abs(values_[i] - other.values_[i]));
  }
  return d;
}

double compensated_sum(std::span<const double> xs) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace qam
