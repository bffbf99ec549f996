#include "qam/lattice_c1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qam/error.hpp"

namespace qam {
namespace {

constexpr int kMaxDepth = 20;

void check_points(const FunctionFamily& family, double x, double y) {
  if (family.members.empty()) throw Error(ErrorKind::InvalidArgument, "family is empty");
  if (!family.interval.contains(x) || !family.interval.contains(y)) {
    throw Error(ErrorKind::OutOfDomain, "delta arguments outside the family interval");
  }
  if (!(x <= y)) throw Error(ErrorKind::InvalidArgument, "delta needs x <= y");
}

// Sum over consecutive points of min over members of the decrement.
double level_sum(const std::vector<std::vector<double>>& vals) {
  const std::size_t pts = vals.front().size();
  std::vector<double> terms(pts - 1);
  for (std::size_t i = 0; i + 1 < pts; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : vals) m = std::min(m, v[i] - v[i + 1]);
    terms[i] = m;
  }
  return compensated_sum(terms);
}

struct CellDelta {
  double value;
  bool converged;
};

// Dyadic refinement of the single cell [a, b]. Stops once two consecutive
// levels each change the sum by no more than max(tol, roundoff floor of that
// level); a single quiet level happens whenever the new midpoints fall between
// their neighbours.
CellDelta refine_cell(const FunctionFamily& family, double a, double b, double tol) {
  if (a == b) return {0.0, true};
  const std::size_t m = family.members.size();
  std::vector<std::vector<double>> vals(m);
  double scale = 0.0;
  for (std::size_t g = 0; g < m; ++g) {
    vals[g] = {family.members[g](a), family.members[g](b)};
    scale = std::max({scale, std::abs(vals[g][0]), std::abs(vals[g][1])});
  }
  double prev = level_sum(vals);
  const double eps = std::numeric_limits<double>::epsilon();
  int quiet = 0;
  for (int level = 1; level <= kMaxDepth; ++level) {
    const std::size_t cells = std::size_t{1} << level;
    for (std::size_t g = 0; g < m; ++g) {
      std::vector<double> next(cells + 1);
      for (std::size_t k = 0; k <= cells; ++k) {
        if (k % 2 == 0) {
          next[k] = vals[g][k / 2];
        } else {
          const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(cells);
          next[k] = family.members[g](t);
        }
      }
      vals[g] = std::move(next);
    }
    const double cur = level_sum(vals);
    const double floor = 4.0 * eps * static_cast<double>(cells) * std::max(scale, 1e-300);
    quiet = std::abs(cur - prev) <= std::max(tol, floor) ? quiet + 1 : 0;
    if (quiet == 2) return {cur, true};
    prev = cur;
  }
  return {prev, false};
}

}  // namespace

FunctionFamily FunctionFamily::from_grids(std::span<const GridFunction> grids) {
  if (grids.empty()) throw Error(ErrorKind::InvalidArgument, "family is empty");
  const Interval I = grids.front().interval();
  const std::size_t n = grids.front().size();
  FunctionFamily fam{I, n, {}};
  for (const GridFunction& g : grids) {
    if (!(g.interval() == I) || g.size() != n) {
      throw Error(ErrorKind::IntervalMismatch, "family grids differ");
    }
    fam.members.push_back([g](double x) { return g.interpolate(x); });
  }
  return fam;
}

FunctionFamily FunctionFamily::negated() const {
  FunctionFamily out{interval, grid_n, {}};
  for (const RealFunction& f : members) out.members.push_back([f](double x) { return -f(x); });
  return out;
}

double small_delta(const FunctionFamily& family, double x, double y) {
  check_points(family, x, y);
  double m = std::numeric_limits<double>::infinity();
  for (const RealFunction& f : family.members) m = std::min(m, f(x) - f(y));
  return m;
}

double capital_delta(const FunctionFamily& family, double x, double y, double refine_tol) {
  check_points(family, x, y);
  if (x == y) return 0.0;
  const Interval& I = family.interval;
  const std::size_t n = family.grid_n;
  std::vector<double> pts{x};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = I.node(i, n);
    if (t > x && t < y) pts.push_back(t);
  }
  pts.push_back(y);

  std::vector<double> parts;
  parts.reserve(pts.size() - 1);
  bool converged = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double share = refine_tol * (pts[i + 1] - pts[i]) / (y - x);
    const CellDelta c = refine_cell(family, pts[i], pts[i + 1], share);
    converged = converged && c.converged;
    parts.push_back(c.value);
  }
  const double total = compensated_sum(parts);
  if (!converged) {
    throw NoConvergenceError("partition refinement exceeded depth 20", total);
  }
  return total;
}

GridFunction sup_order(const FunctionFamily& family, double x0, double refine_tol) {
  if (family.members.empty()) throw Error(ErrorKind::InvalidArgument, "family is empty");
  const Interval& I = family.interval;
  if (!I.interior(x0)) {
    throw Error(ErrorKind::InvalidArgument, "anchor must lie strictly inside the interval");
  }
  const std::size_t n = family.grid_n;
  const double width = I.width();
  auto cell = [&](double a, double b) {
    const CellDelta c = refine_cell(family, a, b, refine_tol * (b - a) / width);
    if (!c.converged) {
      throw NoConvergenceError("partition refinement exceeded depth 20", c.value);
    }
    return c.value;
  };

  // Cell k holds x0, which may coincide with its left node.
  std::size_t k = 0;
  while (k + 2 < n && I.node(k + 1, n) <= x0) ++k;

  std::vector<double> h(n, 0.0);
  h[k] = cell(I.node(k, n), x0);
  for (std::size_t i = k; i-- > 0;) h[i] = h[i + 1] + cell(I.node(i, n), I.node(i + 1, n));
  h[k + 1] = -cell(x0, I.node(k + 1, n));
  for (std::size_t i = k + 1; i + 1 < n; ++i) {
    h[i + 1] = h[i] - cell(I.node(i, n), I.node(i + 1, n));
  }
  return GridFunction(I, std::move(h));
}

GridFunction inf_order(const FunctionFamily& family, double x0, double refine_tol) {
  const GridFunction neg = sup_order(family.negated(), x0, refine_tol);
  std::vector<double> v(neg.values().begin(), neg.values().end());
  for (double& x : v) x = -x;
  return GridFunction(neg.interval(), std::move(v));
}

GridFunction derivative_envelope_oracle(const FunctionFamily& family, double x0) {
  if (family.members.empty()) throw Error(ErrorKind::InvalidArgument, "family is empty");
  const Interval& I = family.interval;
  const std::size_t n = family.grid_n;
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "oracle needs at least 3 nodes");
  const double h = I.step(n);
  std::vector<double> dmax(n, -std::numeric_limits<double>::infinity());
  for (const RealFunction& f : family.members) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(I.node(i, n));
    for (std::size_t i = 0; i < n; ++i) {
      double d;
      if (i == 0) {
        d = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
      } else if (i + 1 == n) {
        d = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
      } else {
        d = (v[i + 1] - v[i - 1]) / (2.0 * h);
      }
      dmax[i] = std::max(dmax[i], d);
    }
  }
  return GridFunction(I, std::move(dmax)).cumulative_trapezoid(x0);
}

FunctionFamily log_derivative_family(std::span<const Generator> family, std::size_t grid_n) {
  const Interval I = family_interval(family);
  FunctionFamily out{I, grid_n, {}};
  for (const Generator& f : family) {
    if (!f.is_c1()) {
      throw Error(ErrorKind::DerivativeUnavailable,
                  to_string(f.family()) + " member is not continuously differentiable");
    }
    out.members.push_back([f](double x) {
      const double d = std::abs(f.derivative(x));
      if (!(d > 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::NoUpperBound, "log-derivative is not finite");
      }
      return std::log(d);
    });
  }
  return out;
}

EnvelopeResult envelope_generator_c1(std::span<const Generator> family, EnvelopeKind kind,
                                     const EnvelopeOptions& opts) {
  const Interval I = family_interval(family);
  const std::size_t nq = quadrature_size(opts);
  const double x0 = resolve_anchor(I, opts);
  const FunctionFamily logds = log_derivative_family(family, nq);
  const GridFunction s = kind == EnvelopeKind::Sup ? sup_order(logds, x0, opts.tol.refine_tol)
                                                   : inf_order(logds, x0, opts.tol.refine_tol);
  Generator u = generator_from_log_slope(s, x0, opts.oversample);

  std::vector<GridFunction> member_logds;
  for (const RealFunction& f : logds.members) {
    member_logds.push_back(GridFunction::sample(I, opts.grid_n, f));
  }
  EnvelopeResult result{kind, std::move(u),
                        LogDerivativeEnvelope{kind, s.downsample(opts.oversample), x0,
                                              std::move(member_logds)},
                        {}, {}};
  attach_certificates(result, family, opts);
  return result;
}

}  // namespace qam
