#include "qam/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qam/error.hpp"

namespace qam {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::LEQ: return "LEQ";
    case Relation::GEQ: return "GEQ";
    case Relation::EQUIV: return "EQUIV";
    case Relation::INCOMPARABLE: return "INCOMPARABLE";
    case Relation::UNKNOWN: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Ratio: return "ratio";
    case Method::Convexity: return "convexity";
    case Method::Empirical: return "empirical";
  }
  return "unknown";
}

MonotoneCheck check_monotone(const std::vector<double>& seq, double eps_mono) {
  MonotoneCheck c;
  if (seq.empty()) return c;
  const auto [mn, mx] = std::minmax_element(seq.begin(), seq.end());
  const double magnitude = std::max(std::abs(*mn), std::abs(*mx));
  c.slack = eps_mono * std::max(*mx - *mn, magnitude);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const double d = seq[i + 1] - seq[i];
    if (-d > c.worst_drop) {
      c.worst_drop = -d;
      c.drop_at = i;
    }
    if (d > c.worst_rise) {
      c.worst_rise = d;
      c.rise_at = i;
    }
  }
  return c;
}

namespace {

void require_same_interval(const Generator& f, const Generator& g) {
  if (!(f.interval() == g.interval())) {
    throw Error(ErrorKind::IntervalMismatch, "comparison needs a shared interval");
  }
}

// Nondecreasing sequence <=> LEQ (for both grid methods after orientation).
ComparisonVerdict verdict_from_sequence(const std::vector<double>& seq,
                                        const std::vector<double>& abscissae, Method method,
                                        double eps_mono, bool leq_when_nondecreasing) {
  const MonotoneCheck c = check_monotone(seq, eps_mono);
  bool leq = c.nondecreasing();
  bool geq = c.nonincreasing();
  double leq_violation = c.worst_drop;
  double geq_violation = c.worst_rise;
  std::size_t leq_at = c.drop_at;
  std::size_t geq_at = c.rise_at;
  if (!leq_when_nondecreasing) {
    std::swap(leq, geq);
    std::swap(leq_violation, geq_violation);
    std::swap(leq_at, geq_at);
  }
  ComparisonVerdict v;
  v.method = method;
  if (leq && geq) {
    v.relation = Relation::EQUIV;
    v.margin = std::max(leq_violation, geq_violation);
  } else if (leq) {
    v.relation = Relation::LEQ;
    v.margin = leq_violation;
  } else if (geq) {
    v.relation = Relation::GEQ;
    v.margin = geq_violation;
  } else {
    v.relation = Relation::INCOMPARABLE;
    v.margin = std::min(leq_violation, geq_violation);
  }
  if (!leq) v.grid_witnesses.emplace_back(abscissae[leq_at], abscissae[leq_at + 1]);
  if (!geq) v.grid_witnesses.emplace_back(abscissae[geq_at], abscissae[geq_at + 1]);
  return v;
}

}  // namespace

ComparisonVerdict compare_ratio(const Generator& f, const Generator& g,
                                const CompareOptions& opts) {
  require_same_interval(f, g);
  if (!f.has_derivative() || !g.has_derivative()) {
    throw Error(ErrorKind::DerivativeUnavailable,
                "ratio test needs derivative samples on both generators");
  }
  const Interval& I = f.interval();
  const std::size_t n = opts.grid_n;
  std::vector<double> ratio(n);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = I.node(i, n);
    xs[i] = x;
    const double df = std::abs(f.derivative(x));
    const double dg = std::abs(g.derivative(x));
    if (!(df > 0.0) || !(dg > 0.0)) {
      throw Error(ErrorKind::DerivativeUnavailable, "derivative vanishes at a grid node");
    }
    ratio[i] = dg / df;
  }
  return verdict_from_sequence(ratio, xs, Method::Ratio, opts.tol.eps_mono, true);
}

ComparisonVerdict compare_convexity(const Generator& f, const Generator& g,
                                    const CompareOptions& opts) {
  require_same_interval(f, g);
  const Generator cf = canonical_increasing(f);
  const Generator cg = canonical_increasing(g);
  const Interval& I = f.interval();
  const std::size_t n = opts.grid_n;
  const Interval image(cg.value(I.lo()), cg.value(I.hi()));
  std::vector<double> phi(n);
  std::vector<double> xs(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x;
    if (j == 0) {
      x = I.lo();
    } else if (j + 1 == n) {
      x = I.hi();
    } else {
      x = cg.inverse(image.node(j, n));
    }
    xs[j] = x;
    phi[j] = cf.value(x);
  }
  const double h = image.step(n);
  std::vector<double> slopes(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) slopes[j] = (phi[j + 1] - phi[j]) / h;
  // Concave composition (nonincreasing secants) means QA_f <= QA_g.
  return verdict_from_sequence(slopes, xs, Method::Convexity, opts.tol.eps_mono, false);
}

ComparisonVerdict compare_empirical(const Generator& f, const Generator& g,
                                    const VectorSampler& sampler, const CompareOptions& opts) {
  require_same_interval(f, g);
  const double tol = opts.tol.tol_cmp;
  double worst_leq = -std::numeric_limits<double>::infinity();  // max QA_f - QA_g
  double worst_geq = -std::numeric_limits<double>::infinity();  // max QA_g - QA_f
  ArgVector leq_witness;
  ArgVector geq_witness;
  for (const ArgVector& v : sampler.draw(f.interval())) {
    const double d = qa_mean(f, v) - qa_mean(g, v);
    if (d > worst_leq) {
      worst_leq = d;
      leq_witness = v;
    }
    if (-d > worst_geq) {
      worst_geq = -d;
      geq_witness = v;
    }
  }
  const bool leq = worst_leq <= tol;
  const bool geq = worst_geq <= tol;
  ComparisonVerdict v;
  v.method = Method::Empirical;
  if (leq && geq) {
    v.relation = Relation::EQUIV;
    v.margin = std::max(worst_leq, worst_geq);
  } else if (leq) {
    v.relation = Relation::LEQ;
    v.margin = worst_leq;
  } else if (geq) {
    v.relation = Relation::GEQ;
    v.margin = worst_geq;
  } else {
    v.relation = Relation::INCOMPARABLE;
    v.margin = std::min(worst_leq, worst_geq);
  }
  if (!leq) v.witnesses.push_back(leq_witness);
  if (!geq) v.witnesses.push_back(geq_witness);
  return v;
}

namespace {

bool opposite(Relation a, Relation b) {
  return (a == Relation::LEQ && b == Relation::GEQ) || (a == Relation::GEQ && b == Relation::LEQ);
}

}  // namespace

ComparisonReport compare_all(const Generator& f, const Generator& g,
                             const VectorSampler& sampler, const CompareOptions& opts) {
  ComparisonReport report;
  if (f.has_derivative() && g.has_derivative()) {
    report.verdicts.push_back(compare_ratio(f, g, opts));
  }
  report.verdicts.push_back(compare_convexity(f, g, opts));
  report.verdicts.push_back(compare_empirical(f, g, sampler, opts));

  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    for (std::size_t j = i + 1; j < report.verdicts.size(); ++j) {
      if (opposite(report.verdicts[i].relation, report.verdicts[j].relation)) {
        report.consistent = false;
      }
    }
  }
  // Proving methods (ratio, convexity) decide; empirical can only refute.
  const ComparisonVerdict& primary = report.verdicts.front();
  report.relation = primary.relation;
  if (!report.consistent) report.relation = Relation::UNKNOWN;
  return report;
}

}  // namespace qam
