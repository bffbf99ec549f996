#include "qam/mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qam/error.hpp"

namespace qam {

double qa_mean(const Generator& g, std::span<const double> v) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, "mean of an empty vector");
  const Interval& I = g.interval();
  std::vector<double> fv;
  fv.reserve(v.size());
  double vmin = v.front();
  double vmax = v.front();
  for (double x : v) {
    if (!I.contains(x)) {
      throw Error(ErrorKind::OutOfDomain, "argument " + std::to_string(x) + " outside interval");
    }
    vmin = std::min(vmin, x);
    vmax = std::max(vmax, x);
    fv.push_back(g.value(x));
  }
  if (vmin == vmax) return vmin;
  std::sort(fv.begin(), fv.end());
  const double avg = compensated_sum(fv) / static_cast<double>(fv.size());
  return g.inverse_within(avg, vmin, vmax);
}

VectorSampler::VectorSampler(std::uint64_t seed, std::size_t count, std::size_t n_min,
                             std::size_t n_max)
    : seed_(seed), count_(count), n_min_(n_min), n_max_(n_max) {
  if (n_min < 2 || n_max < n_min) {
    throw Error(ErrorKind::InvalidArgument, "sampler needs 2 <= n_min <= n_max");
  }
}

std::vector<ArgVector> VectorSampler::draw(const Interval& interval) const {
  std::mt19937_64 rng(seed_);
  const double h = interval.width() / 1000.0;
  std::uniform_real_distribution<double> entry(interval.lo() + h, interval.hi() - h);
  std::uniform_int_distribution<std::size_t> length(n_min_, n_max_);
  std::vector<ArgVector> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    ArgVector v(length(rng));
    for (double& x : v) x = entry(rng);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

double ratio(const Generator& f, const Probe& p) {
  const double fz = f.value(p[2]);
  const double den = f.value(p[1]) - fz;
  const double guard = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(f.value(p[1])), std::abs(fz));
  if (!(std::abs(den) > guard)) {
    throw Error(ErrorKind::DegenerateProbe, "f(y) - f(z) vanishes at probe");
  }
  return (f.value(p[0]) - fz) / den;
}

}  // namespace

double pal91_ratio_distance(const Generator& f, const Generator& g,
                            std::span<const Probe> probes) {
  double d = 0.0;
  for (const Probe& p : probes) {
    if (p[1] == p[2]) throw Error(ErrorKind::DegenerateProbe, "probe has y == z");
    d = std::max(d, std::abs(ratio(f, p) - ratio(g, p)));
  }
  return d;
}

std::vector<Probe> standard_probes(const Interval& interval, std::size_t k) {
  std::vector<double> pts(k);
  for (std::size_t i = 0; i < k; ++i) {
    pts[i] = interval.lo() + interval.width() * (static_cast<double>(i) + 0.5) /
                                 static_cast<double>(k);
  }
  std::vector<Probe> out;
  for (double x : pts) {
    for (double y : pts) {
      for (double z : pts) {
        if (y != z) out.push_back({x, y, z});
      }
    }
  }
  return out;
}

}  // namespace qam
