#include "qam/envelope.hpp"

#include <cmath>
#include <vector>

#include "qam/error.hpp"

namespace qam {

std::string to_string(EnvelopeKind kind) { return kind == EnvelopeKind::Sup ? "sup" : "inf"; }

bool EnvelopeResult::certified() const {
  for (const auto& v : dominance_certificates) {
    if (kind == EnvelopeKind::Sup ? !holds_leq(v.relation) : !holds_geq(v.relation)) return false;
  }
  for (const auto& c : minimality_certificates) {
    if (kind == EnvelopeKind::Sup ? !holds_leq(c.verdict.relation)
                                  : !holds_geq(c.verdict.relation)) {
      return false;
    }
  }
  return true;
}

std::size_t quadrature_size(const EnvelopeOptions& opts) {
  if (opts.grid_n < 2 || opts.oversample == 0) {
    throw Error(ErrorKind::InvalidArgument, "envelope grid needs n >= 2 and oversample >= 1");
  }
  return (opts.grid_n - 1) * opts.oversample + 1;
}

double resolve_anchor(const Interval& interval, const EnvelopeOptions& opts) {
  const double x0 = opts.anchor.value_or(interval.midpoint());
  if (!interval.interior(x0)) {
    throw Error(ErrorKind::InvalidArgument, "anchor must lie strictly inside the interval");
  }
  return x0;
}

Interval family_interval(std::span<const Generator> family) {
  if (family.empty()) throw Error(ErrorKind::InvalidArgument, "family is empty");
  const Interval I = family.front().interval();
  for (const Generator& f : family) {
    if (!(f.interval() == I)) {
      throw Error(ErrorKind::IntervalMismatch, "family members live on different intervals");
    }
  }
  return I;
}

void attach_certificates(EnvelopeResult& result, std::span<const Generator> family,
                         const EnvelopeOptions& opts) {
  CompareOptions copts{opts.grid_n, opts.tol};
  const bool sup = result.kind == EnvelopeKind::Sup;
  result.dominance_certificates.clear();
  for (const Generator& f : family) {
    result.dominance_certificates.push_back(compare_ratio(f, result.generator, copts));
  }
  result.minimality_certificates.clear();
  for (const NamedGenerator& bound : opts.bounds) {
    bool bounds_family = true;
    for (const Generator& f : family) {
      const Relation r = compare_ratio(f, bound.generator, copts).relation;
      if (sup ? !holds_leq(r) : !holds_geq(r)) {
        bounds_family = false;
        break;
      }
    }
    if (!bounds_family) continue;
    result.minimality_certificates.push_back(
        {bound.name, compare_ratio(result.generator, bound.generator, copts)});
  }
}

Generator generator_from_log_slope(const GridFunction& log_slope, double anchor,
                                   std::size_t factor) {
  std::vector<double> slope(log_slope.size());
  for (std::size_t i = 0; i < slope.size(); ++i) {
    slope[i] = std::exp(log_slope[i]);
    if (!std::isfinite(slope[i]) || !(slope[i] > 0.0)) {
      throw Error(ErrorKind::Overflow, "exp of the log-slope leaves the floating range at x = " +
                                           std::to_string(log_slope.node(i)));
    }
  }
  const GridFunction up(log_slope.interval(), std::move(slope));
  const GridFunction u = up.cumulative_integral(anchor);
  return Generator::grid(u.downsample(factor), up.downsample(factor));
}

}  // namespace qam
