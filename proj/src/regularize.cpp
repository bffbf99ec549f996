#include "qam/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qam/error.hpp"

namespace qam {
namespace {

const PiecewiseDesc& piecewise_of(const Generator& f) {
  const auto* d = std::get_if<PiecewiseDesc>(&f.descriptor().node);
  if (d == nullptr) {
    throw Error(ErrorKind::InvalidArgument, "regularization steps need a piecewise generator");
  }
  return *d;
}

std::size_t break_index(const PiecewiseDesc& d, double z) {
  const auto it = std::find(d.breaks.begin(), d.breaks.end(), z);
  if (it == d.breaks.end()) {
    throw Error(ErrorKind::InvalidArgument, "no kink at z = " + std::to_string(z));
  }
  return static_cast<std::size_t>(it - d.breaks.begin());
}

void check_slope_order(double left, double right, Projection direction) {
  const bool ok = direction == Projection::Upper ? left >= right : left <= right;
  if (!ok) {
    throw Error(ErrorKind::SlopeOrderViolation,
                direction == Projection::Upper
                    ? "upper projection needs left slope >= right slope at every kink"
                    : "lower projection needs left slope <= right slope at every kink");
  }
}

}  // namespace

Generator regularize_step(const Generator& f, std::optional<double> z_minus,
                          std::optional<double> z_plus, Projection direction) {
  if (!z_minus && !z_plus) return f;
  const PiecewiseDesc& d = piecewise_of(f);
  if (z_minus && z_plus && !(*z_minus < *z_plus)) {
    throw Error(ErrorKind::InvalidArgument, "z_minus must lie below z_plus");
  }
  std::vector<double> breaks = d.breaks;
  std::vector<double> scale = d.scale;
  std::vector<double> offset = d.offset;

  // Above z_plus first so that indices below it stay valid.
  if (z_plus) {
    const std::size_t i = break_index(d, *z_plus);
    check_slope_order(scale[i], scale[i + 1], direction);
    const double r = scale[i] / scale[i + 1];
    const double fz = f.value(*z_plus);
    for (std::size_t k = i + 1; k < scale.size(); ++k) {
      scale[k] *= r;
      offset[k] = r * (offset[k] - fz) + fz;
    }
    breaks.erase(breaks.begin() + static_cast<std::ptrdiff_t>(i));
    scale.erase(scale.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    offset.erase(offset.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  if (z_minus) {
    const std::size_t j = break_index(d, *z_minus);
    check_slope_order(scale[j], scale[j + 1], direction);
    const double r = scale[j + 1] / scale[j];
    const double fz = f.value(*z_minus);
    for (std::size_t k = 0; k <= j; ++k) {
      scale[k] *= r;
      offset[k] = r * (offset[k] - fz) + fz;
    }
    breaks.erase(breaks.begin() + static_cast<std::ptrdiff_t>(j));
    scale.erase(scale.begin() + static_cast<std::ptrdiff_t>(j));
    offset.erase(offset.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return Generator::piecewise_segments(d.base, std::move(breaks), std::move(scale),
                                       std::move(offset));
}

double default_regularization_anchor(const Generator& f) {
  const Interval& I = f.interval();
  std::vector<double> cuts{I.lo()};
  for (const Kink& k : f.kinks()) cuts.push_back(k.z);
  cuts.push_back(I.hi());
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] > cuts[best + 1] - cuts[best]) best = i;
  }
  return 0.5 * (cuts[best] + cuts[best + 1]);
}

Regularization regularize(const Generator& f, Projection direction,
                          std::optional<double> anchor) {
  const KinkSpec kinks = f.kinks();
  const double x0 = anchor.value_or(default_regularization_anchor(f));
  if (!f.interval().interior(x0)) {
    throw Error(ErrorKind::InvalidArgument, "anchor must lie strictly inside the interval");
  }

  bool any_upper = false;
  bool any_lower = false;
  for (const Kink& k : kinks) {
    if (k.z == x0) throw Error(ErrorKind::InvalidArgument, "anchor must be a differentiability point");
    any_upper = any_upper || k.left_slope > k.right_slope;
    any_lower = any_lower || k.left_slope < k.right_slope;
  }
  if (any_upper && any_lower) {
    throw Error(ErrorKind::EmptyProjection,
                "kinks point both ways; neither projection set is nonempty");
  }
  for (const Kink& k : kinks) check_slope_order(k.left_slope, k.right_slope, direction);

  std::vector<double> order;
  for (const Kink& k : kinks) order.push_back(k.z);
  std::stable_sort(order.begin(), order.end(), [x0](double a, double b) {
    return std::abs(a - x0) < std::abs(b - x0);
  });

  RegularizationTrace trace;
  trace.iterates.push_back(f);
  trace.kinks_remaining.push_back(kinks.size());
  Generator current = f;
  for (double z : order) {
    current = z < x0 ? regularize_step(current, z, std::nullopt, direction)
                     : regularize_step(current, std::nullopt, z, direction);
    trace.iterates.push_back(current);
    trace.kinks_remaining.push_back(current.kinks().size());
    trace.healed.push_back(z);
  }
  trace.pal91_distances = pal91_convergence_report(trace, current);
  return Regularization{current, std::move(trace), x0};
}

std::vector<double> pal91_convergence_report(const RegularizationTrace& trace,
                                             const Generator& m,
                                             std::span<const Probe> probes) {
  std::vector<double> out;
  out.reserve(trace.iterates.size());
  for (const Generator& g : trace.iterates) out.push_back(pal91_ratio_distance(g, m, probes));
  return out;
}

std::vector<double> pal91_convergence_report(const RegularizationTrace& trace,
                                             const Generator& m) {
  const std::vector<Probe> probes = standard_probes(m.interval());
  return pal91_convergence_report(trace, m, probes);
}

}  // namespace qam
