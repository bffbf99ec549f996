#include "qam/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qam/error.hpp"

namespace qam {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kValidationPoints = 1000;

struct HermiteBasis {
  double h00, h10, h01, h11;
  double d00, d10, d01, d11;  // derivatives w.r.t. t
};

HermiteBasis hermite_basis(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {2 * t3 - 3 * t2 + 1,  t3 - 2 * t2 + t,      -2 * t3 + 3 * t2,     t3 - t2,
          6 * t2 - 6 * t,       3 * t2 - 4 * t + 1,   -6 * t2 + 6 * t,      3 * t2 - 2 * t};
}

// Segment index for a piecewise generator; `right` selects the segment to
// the right of a break when x sits exactly on it.
std::size_t segment(const PiecewiseDesc& d, double x, bool right) {
  const auto& b = d.breaks;
  const auto it = right ? std::upper_bound(b.begin(), b.end(), x)
                        : std::lower_bound(b.begin(), b.end(), x);
  return static_cast<std::size_t>(it - b.begin());
}

}  // namespace

struct Generator::Impl {
  Descriptor desc;
  Interval interval;
  Direction direction;
};

std::string to_string(Family family) {
  switch (family) {
    case Family::Power: return "power";
    case Family::Log: return "log";
    case Family::Exponential: return "exp";
    case Family::Affine: return "affine";
    case Family::Piecewise: return "piecewise";
    case Family::Grid: return "grid";
  }
  return "unknown";
}

void validate_kinks(const KinkSpec& kinks, const Interval& interval) {
  for (std::size_t i = 0; i < kinks.size(); ++i) {
    const Kink& k = kinks[i];
    if (!interval.interior(k.z)) {
      throw Error(ErrorKind::InvalidArgument, "kink at " + std::to_string(k.z) +
                                                  " is not interior to the interval");
    }
    if (i > 0 && !(kinks[i - 1].z < k.z)) {
      throw Error(ErrorKind::InvalidArgument, "kink locations must be strictly increasing");
    }
    if (!(k.left_slope > 0.0) || !(k.right_slope > 0.0) || !std::isfinite(k.left_slope) ||
        !std::isfinite(k.right_slope)) {
      throw Error(ErrorKind::InvalidArgument, "kink slopes must be finite and strictly positive");
    }
  }
}

Generator Generator::make(Descriptor desc, Interval interval, bool validate) {
  auto impl = std::make_shared<Impl>(Impl{std::move(desc), interval, Direction::Increasing});
  Generator g(impl);
  const double a = g.value(interval.lo());
  const double b = g.value(interval.hi());
  if (!(a != b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::NotMonotone, "generator takes equal or non-finite endpoint values");
  }
  impl->direction = b > a ? Direction::Increasing : Direction::Decreasing;
  if (validate) {
    const bool inc = impl->direction == Direction::Increasing;
    double prev = a;
    for (std::size_t i = 1; i <= kValidationPoints; ++i) {
      const double v = g.value(interval.node(i, kValidationPoints + 1));
      if (!std::isfinite(v) || (inc ? !(v > prev) : !(v < prev))) {
        throw Error(ErrorKind::NotMonotone, "generator is not strictly monotone on the grid");
      }
      prev = v;
    }
  }
  return g;
}

Generator Generator::power(double p, Interval interval) {
  if (!(interval.lo() > 0.0)) {
    throw Error(ErrorKind::NonPositiveInterval, "power and log generators need lo > 0");
  }
  if (!std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "power exponent is not finite");
  if (p == 0.0) return make(Descriptor{LogDesc{}}, interval, true);
  return make(Descriptor{PowerDesc{p}}, interval, true);
}

Generator Generator::log(Interval interval) { return power(0.0, interval); }

Generator Generator::exponential(double p, Interval interval) {
  if (p == 0.0 || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidArgument, "exponential generator needs finite p != 0");
  }
  return make(Descriptor{ExpDesc{p}}, interval, true);
}

Generator Generator::affine(const Generator& base, double alpha, double beta) {
  if (alpha == 0.0 || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::InvalidArgument, "affine map needs finite alpha != 0 and beta");
  }
  if (const auto* inner = std::get_if<AffineDesc>(&base.descriptor().node)) {
    return make(Descriptor{AffineDesc{inner->base, alpha * inner->alpha,
                                      alpha * inner->beta + beta}},
                base.interval(), false);
  }
  return make(Descriptor{AffineDesc{base, alpha, beta}}, base.interval(), false);
}

Generator Generator::piecewise(const Generator& base, const KinkSpec& kinks) {
  validate_kinks(kinks, base.interval());
  std::vector<double> breaks;
  std::vector<double> scale{1.0};
  std::vector<double> offset{0.0};
  for (const Kink& k : kinks) {
    const double b = base.value(k.z);
    const double a = scale.back() * (k.right_slope / k.left_slope);
    offset.push_back(scale.back() * b + offset.back() - a * b);
    scale.push_back(a);
    breaks.push_back(k.z);
  }
  return piecewise_segments(base, std::move(breaks), std::move(scale), std::move(offset));
}

Generator Generator::piecewise_segments(const Generator& base, std::vector<double> breaks,
                                        std::vector<double> scale, std::vector<double> offset) {
  if (!base.is_c1()) {
    throw Error(ErrorKind::InvalidArgument, "piecewise base must be continuously differentiable");
  }
  if (scale.size() != breaks.size() + 1 || offset.size() != scale.size()) {
    throw Error(ErrorKind::InvalidArgument, "piecewise needs one scale/offset per segment");
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!base.interval().interior(breaks[i]) || (i > 0 && !(breaks[i - 1] < breaks[i]))) {
      throw Error(ErrorKind::InvalidArgument, "piecewise breaks must be interior and increasing");
    }
  }
  for (double a : scale) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error(ErrorKind::InvalidArgument, "piecewise scales must be positive");
    }
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double b = base.value(breaks[i]);
    const double left = scale[i] * b + offset[i];
    const double right = scale[i + 1] * b + offset[i + 1];
    const double mag = std::max({std::abs(left), std::abs(right), 1.0});
    if (std::abs(left - right) > 1e-12 * mag) {
      throw Error(ErrorKind::InvalidArgument, "piecewise generator is discontinuous at a break");
    }
  }
  return make(Descriptor{PiecewiseDesc{base, std::move(breaks), std::move(scale),
                                       std::move(offset)}},
              base.interval(), false);
}

Generator Generator::grid(GridFunction values) {
  const auto v = values.values();
  const bool inc = v.back() > v.front();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (inc ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) {
      throw Error(ErrorKind::NotMonotone, "grid samples are not strictly monotone");
    }
  }
  const Interval interval = values.interval();
  return make(Descriptor{GridDesc{std::move(values), std::nullopt, {}}}, interval, false);
}

Generator Generator::grid(GridFunction values, GridFunction slopes) {
  if (!(values.interval() == slopes.interval()) || values.size() != slopes.size()) {
    throw Error(ErrorKind::IntervalMismatch, "value and slope samples use different grids");
  }
  const auto v = values.values();
  const auto m = slopes.values();
  const bool inc = v.back() > v.front();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0 && (inc ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))) {
      throw Error(ErrorKind::NotMonotone, "grid samples are not strictly monotone");
    }
    if (inc ? !(m[i] > 0.0) : !(m[i] < 0.0)) {
      throw Error(ErrorKind::NotMonotone, "slope samples vanish or disagree with the values");
    }
  }
  // Fritsch-Carlson sufficient condition for a monotone cubic on each cell.
  const double h = values.step();
  std::vector<bool> hermite(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double secant = (v[i + 1] - v[i]) / h;
    const double a = m[i] / secant;
    const double b = m[i + 1] / secant;
    hermite[i] = a * a + b * b <= 9.0;
  }
  const Interval interval = values.interval();
  return make(Descriptor{GridDesc{std::move(values), std::move(slopes), std::move(hermite)}},
              interval, false);
}

Family Generator::family() const noexcept {
  return std::visit(overloaded{
                        [](const PowerDesc&) { return Family::Power; },
                        [](const LogDesc&) { return Family::Log; },
                        [](const ExpDesc&) { return Family::Exponential; },
                        [](const AffineDesc&) { return Family::Affine; },
                        [](const PiecewiseDesc&) { return Family::Piecewise; },
                        [](const GridDesc&) { return Family::Grid; },
                    },
                    impl_->desc.node);
}

const Descriptor& Generator::descriptor() const noexcept { return impl_->desc; }
const Interval& Generator::interval() const noexcept { return impl_->interval; }
Direction Generator::direction() const noexcept { return impl_->direction; }

namespace {

void check_domain(const Interval& interval, double x) {
  if (!interval.contains(x)) {
    throw Error(ErrorKind::OutOfDomain, "x = " + std::to_string(x) + " outside [" +
                                            std::to_string(interval.lo()) + ", " +
                                            std::to_string(interval.hi()) + "]");
  }
}

double grid_value(const GridDesc& d, double x) {
  const GridFunction& g = d.values;
  const std::size_t i = g.cell_of(x);
  const double x0 = g.node(i);
  const double x1 = g.node(i + 1);
  if (x == x0) return g[i];
  if (x == x1) return g[i + 1];
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  if (d.slopes && d.hermite[i]) {
    const auto& m = *d.slopes;
    const HermiteBasis b = hermite_basis(t);
    return b.h00 * g[i] + b.h10 * h * m[i] + b.h01 * g[i + 1] + b.h11 * h * m[i + 1];
  }
  return g[i] + t * (g[i + 1] - g[i]);
}

// `right` picks the cell to the right of a node (the left cell at hi).
double grid_slope(const GridDesc& d, double x, bool right) {
  const GridFunction& g = d.values;
  const std::size_t n = g.size();
  std::size_t i = g.cell_of(x);
  const double x0 = g.node(i);
  const double x1 = g.node(i + 1);
  const double h = x1 - x0;
  if (d.slopes) {
    const auto& m = *d.slopes;
    if (x == x0) return m[i];
    if (x == x1) return m[i + 1];
    if (d.hermite[i]) {
      const double t = (x - x0) / h;
      const HermiteBasis b = hermite_basis(t);
      return (b.d00 * g[i] + b.d10 * h * m[i] + b.d01 * g[i + 1] + b.d11 * h * m[i + 1]) / h;
    }
    return (g[i + 1] - g[i]) / h;
  }
  if (!right && x == x0 && i > 0) --i;
  if (right && x == x1 && i + 2 < n) ++i;
  return (g[i + 1] - g[i]) / g.step();
}

}  // namespace

double Generator::value(double x) const {
  check_domain(interval(), x);
  return std::visit(overloaded{
                        [x](const PowerDesc& d) { return d.p == 1.0 ? x : std::pow(x, d.p); },
                        [x](const LogDesc&) { return std::log(x); },
                        [x](const ExpDesc& d) { return std::exp(d.p * x); },
                        [x](const AffineDesc& d) { return d.alpha * d.base.value(x) + d.beta; },
                        [x](const PiecewiseDesc& d) {
                          const std::size_t k = segment(d, x, false);
                          return d.scale[k] * d.base.value(x) + d.offset[k];
                        },
                        [x](const GridDesc& d) { return grid_value(d, x); },
                    },
                    impl_->desc.node);
}

namespace {

double one_sided_derivative(const Generator& g, double x, bool right) {
  return std::visit(overloaded{
                        [x](const PowerDesc& d) { return d.p * std::pow(x, d.p - 1.0); },
                        [x](const LogDesc&) { return 1.0 / x; },
                        [x](const ExpDesc& d) { return d.p * std::exp(d.p * x); },
                        [x, right](const AffineDesc& d) {
                          return d.alpha * (right ? d.base.right_derivative(x)
                                                  : d.base.left_derivative(x));
                        },
                        [x, right](const PiecewiseDesc& d) {
                          return d.scale[segment(d, x, right)] * d.base.derivative(x);
                        },
                        [x, right](const GridDesc& d) { return grid_slope(d, x, right); },
                    },
                    g.descriptor().node);
}

}  // namespace

double Generator::derivative(double x) const { return right_derivative(x); }

double Generator::right_derivative(double x) const {
  check_domain(interval(), x);
  return one_sided_derivative(*this, x, x < interval().hi());
}

double Generator::left_derivative(double x) const {
  check_domain(interval(), x);
  return one_sided_derivative(*this, x, x == interval().lo());
}

double Generator::second_derivative(double x) const {
  check_domain(interval(), x);
  return std::visit(
      overloaded{
          [x](const PowerDesc& d) { return d.p * (d.p - 1.0) * std::pow(x, d.p - 2.0); },
          [x](const LogDesc&) { return -1.0 / (x * x); },
          [x](const ExpDesc& d) { return d.p * d.p * std::exp(d.p * x); },
          [x](const AffineDesc& d) { return d.alpha * d.base.second_derivative(x); },
          [x](const PiecewiseDesc& d) {
            return d.scale[segment(d, x, true)] * d.base.second_derivative(x);
          },
          [](const GridDesc&) -> double {
            throw Error(ErrorKind::Unavailable, "grid generators carry no second derivative");
          },
      },
      impl_->desc.node);
}

bool Generator::has_derivative() const noexcept {
  return std::visit(overloaded{
                        [](const AffineDesc& d) { return d.base.has_derivative(); },
                        [](const GridDesc& d) { return d.slopes.has_value(); },
                        [](const auto&) { return true; },
                    },
                    impl_->desc.node);
}

bool Generator::has_second_derivative() const noexcept {
  return std::visit(overloaded{
                        [](const AffineDesc& d) { return d.base.has_second_derivative(); },
                        [](const PiecewiseDesc& d) { return d.base.has_second_derivative(); },
                        [](const GridDesc&) { return false; },
                        [](const auto&) { return true; },
                    },
                    impl_->desc.node);
}

bool Generator::is_c1() const noexcept {
  return std::visit(overloaded{
                        [](const AffineDesc& d) { return d.base.is_c1(); },
                        [](const PiecewiseDesc& d) { return d.breaks.empty(); },
                        [](const GridDesc& d) { return d.slopes.has_value(); },
                        [](const auto&) { return true; },
                    },
                    impl_->desc.node);
}

KinkSpec Generator::kinks() const {
  return std::visit(overloaded{
                        [](const AffineDesc& d) { return d.base.kinks(); },
                        [](const PiecewiseDesc& d) {
                          KinkSpec out;
                          for (std::size_t i = 0; i < d.breaks.size(); ++i) {
                            const double b = std::abs(d.base.derivative(d.breaks[i]));
                            out.push_back({d.breaks[i], d.scale[i] * b, d.scale[i + 1] * b});
                          }
                          return out;
                        },
                        [](const auto&) { return KinkSpec{}; },
                    },
                    impl_->desc.node);
}

double Generator::inverse(double y) const {
  return inverse_within(y, interval().lo(), interval().hi());
}

double Generator::inverse_within(double y, double a, double b) const {
  if (!(a <= b)) std::swap(a, b);
  check_domain(interval(), a);
  check_domain(interval(), b);
  const bool inc = increasing();
  double ya = value(a);
  double yb = value(b);
  if (!inc) std::swap(ya, yb);  // ya <= yb from here on
  const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max({std::abs(ya), std::abs(yb), std::abs(yb - ya)});
  if (!(y >= ya - slack && y <= yb + slack)) {
    throw Error(ErrorKind::OutOfRange, "y = " + std::to_string(y) + " outside value range");
  }
  if (y <= ya) return inc ? a : b;
  if (y >= yb) return inc ? b : a;

  // Bracket [lo, hi] in x with value(lo) <= y <= value(hi) in canonical order.
  double lo = a;
  double hi = b;
  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = std::midpoint(lo, hi);
    if (mid <= lo || mid >= hi) break;
    const double ym = value(mid);
    if (ym == y) return mid;
    if ((ym < y) == inc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double rlo = std::abs(value(lo) - y);
  const double rhi = std::abs(value(hi) - y);
  return rlo <= rhi ? lo : hi;
}

Generator normalize_affine(const Generator& g) {
  const double a = g.value(g.interval().lo());
  const double b = g.value(g.interval().hi());
  const double alpha = 1.0 / (b - a);
  return Generator::affine(g, alpha, -a * alpha);
}

Generator canonical_increasing(const Generator& g) {
  return g.increasing() ? g : Generator::affine(g, -1.0, 0.0);
}

double normalized_distance(const Generator& f, const Generator& g, std::size_t grid_n) {
  if (!(f.interval() == g.interval())) {
    throw Error(ErrorKind::IntervalMismatch, "generators live on different intervals");
  }
  const Generator nf = normalize_affine(f);
  const Generator ng = normalize_affine(g);
  double d = 0.0;
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double x = f.interval().node(i, grid_n);
    d = std::max(d, std::abs(nf.value(x) - ng.value(x)));
  }
  return d;
}

bool equivalent(const Generator& f, const Generator& g, double tol, std::size_t grid_n) {
  return normalized_distance(f, g, grid_n) <= tol;
}

GridFunction sample_values(const Generator& g, std::size_t n) {
  return GridFunction::sample(g.interval(), n, [&g](double x) { return g.value(x); });
}

GridFunction sample_derivatives(const Generator& g, std::size_t n) {
  return GridFunction::sample(g.interval(), n, [&g](double x) { return g.derivative(x); });
}

}  // namespace qam
