#include "qam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qam/error.hpp"

namespace qam {
namespace {

std::string number_name(double p) {
  std::string s = std::to_string(p);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

Catalog Catalog::standard(const Interval& interval) {
  Catalog c(interval);
  if (interval.lo() > 0.0) {
    for (double p : kCatalogPowers) {
      c.generators_.push_back({"power:" + number_name(p), Generator::power(p, interval)});
    }
  }
  for (double p : kCatalogExponentials) {
    c.generators_.push_back({"exp:" + number_name(p), Generator::exponential(p, interval)});
  }
  const Generator base = interval.lo() > 0.0 ? Generator::power(1.0, interval)
                                             : Generator::exponential(1.0, interval);
  const double third = interval.lo() + interval.width() / 3.0;
  const double two_thirds = interval.lo() + 2.0 * interval.width() / 3.0;
  c.generators_.push_back(
      {"piecewise:concave", Generator::piecewise(base, KinkSpec{{third, 1.0, 0.5}})});
  c.generators_.push_back(
      {"piecewise:convex", Generator::piecewise(base, KinkSpec{{two_thirds, 0.5, 1.0}})});
  return c;
}

std::vector<NamedGenerator> Catalog::smooth() const {
  std::vector<NamedGenerator> out;
  for (const auto& g : generators_) {
    if (g.generator.is_c1()) out.push_back(g);
  }
  return out;
}

const Generator& Catalog::at(const std::string& name) const {
  for (const auto& g : generators_) {
    if (g.name == name) return g.generator;
  }
  throw Error(ErrorKind::InvalidArgument, "no catalog member named " + name);
}

VerificationReport verify_envelope(const EnvelopeResult& result,
                                   std::span<const Generator> family, const Catalog& catalog,
                                   const VectorSampler& sampler, const CompareOptions& opts) {
  VerificationReport report;
  const bool sup = result.kind == EnvelopeKind::Sup;
  const Generator& u = result.generator;
  auto wanted = [sup](Relation r) { return sup ? holds_leq(r) : holds_geq(r); };

  auto record = [&](std::string check, std::string subject, const ComparisonVerdict& v) {
    const bool ok = wanted(v.relation);
    report.passed = report.passed && ok;
    // Witnesses of the opposite direction only show strictness.
    std::vector<ArgVector> refuting = ok ? std::vector<ArgVector>{} : v.witnesses;
    if (v.method == Method::Empirical) {
      report.worst_empirical_margin = std::max(report.worst_empirical_margin, v.margin);
      report.witness_count += refuting.size();
    } else {
      report.worst_ratio_margin = std::max(report.worst_ratio_margin, v.margin);
    }
    report.checks.push_back({std::move(check), std::move(subject), v.method, v.relation,
                             v.margin, ok, std::move(refuting)});
  };

  // Dominance: member below u (sup) or above u (inf).
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::string name = "member:" + std::to_string(i);
    record("dominance", name, compare_ratio(family[i], u, opts));
    record("dominance", name, compare_empirical(family[i], u, sampler, opts));
  }
  // Minimality against catalog members bounding the whole family.
  for (const NamedGenerator& k : catalog.generators()) {
    bool bounds = true;
    for (const Generator& f : family) {
      if (!wanted(compare_ratio(f, k.generator, opts).relation)) {
        bounds = false;
        break;
      }
    }
    if (!bounds) continue;
    record("minimality", k.name, compare_ratio(u, k.generator, opts));
    record("minimality", k.name, compare_empirical(u, k.generator, sampler, opts));
  }
  return report;
}

UqaReport uqa_lqa_report(std::span<const Generator> family, std::span<const double> v,
                         const Catalog& catalog, const EnvelopeResult& envelope,
                         const CompareOptions& opts) {
  const bool sup = envelope.kind == EnvelopeKind::Sup;
  UqaReport r{sup ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity(),
              qa_mean(envelope.generator, v), "", false};
  for (const NamedGenerator& k : catalog.generators()) {
    bool bounds = true;
    for (const Generator& f : family) {
      const Relation rel = compare_ratio(f, k.generator, opts).relation;
      if (sup ? !holds_leq(rel) : !holds_geq(rel)) {
        bounds = false;
        break;
      }
    }
    if (!bounds) continue;
    const double m = qa_mean(k.generator, v);
    if (sup ? m < r.catalog_bound : m > r.catalog_bound) {
      r.catalog_bound = m;
      r.attained_by = k.name;
    }
  }
  if (r.attained_by.empty()) {
    throw Error(ErrorKind::NoUpperBoundInCatalog,
                sup ? "no catalog member dominates the family"
                    : "no catalog member is dominated by the family");
  }
  const double tol = opts.tol.tol_cmp;
  r.consistent = sup ? r.envelope_mean <= r.catalog_bound + tol
                     : r.envelope_mean >= r.catalog_bound - tol;
  return r;
}

}  // namespace qam
