#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <fmt/format.h>

#include "qam/error.hpp"
#include "qam/lattice_c1.hpp"
#include "qam/lattice_smooth.hpp"
#include "qam/oracle.hpp"
#include "qam/regularize.hpp"

namespace qam {
namespace {

// Running worst error against a tolerance.
struct Tally {
  std::string name;
  double tol;
  double worst = 0.0;
  std::size_t count = 0;
  std::size_t failures = 0;

  void add(double err) {
    ++count;
    worst = std::max(worst, err);
    if (!(err <= tol)) ++failures;
  }
  SuiteCheck check() const {
    return {name, failures == 0, worst,
            fmt::format("{} cases, {} violations, tolerance {:g}", count, failures, tol)};
  }
};

SuiteCheck flag(std::string name, bool ok, double worst, std::string detail) {
  return {std::move(name), ok, worst, std::move(detail)};
}

SuiteReport means_suite(const SuiteConfig& cfg) {
  Tally between{"betweenness", 0.0};
  Tally symmetry{"symmetry", 1e-13};
  Tally reflexive{"reflexivity", 1e-12};
  Tally monotone{"monotonicity", 1e-12};
  Tally affine{"affine invariance", 1e-10};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (const Interval& I : {Interval(1.0, 10.0), Interval(-1.0, 1.0)}) {
    const Catalog catalog = Catalog::standard(I);
    const VectorSampler sampler(cfg.seed, cfg.samples);
    const double h = I.width() / 1000.0;
    for (const NamedGenerator& ng : catalog.generators()) {
      const Generator& g = ng.generator;
      const Generator a = Generator::affine(g, -2.5, 3.0);
      for (const ArgVector& v : sampler.draw(I)) {
        const double m = qa_mean(g, v);
        const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        between.add(std::max({0.0, *mn - m, m - *mx}));

        ArgVector r(v.rbegin(), v.rend());
        std::rotate(r.begin(), r.begin() + 1, r.end());
        symmetry.add(std::abs(qa_mean(g, r) - m) / std::max(1.0, std::abs(m)));

        const ArgVector same(v.size(), v.front());
        reflexive.add(std::abs(qa_mean(g, same) - v.front()) / std::max(1.0, std::abs(v.front())));

        ArgVector w = v;
        for (double& x : w) x = std::min(I.hi() - h, x + unit(rng) * (I.hi() - h - x));
        monotone.add(std::max(0.0, m - qa_mean(g, w)));

        affine.add(std::abs(qa_mean(a, v) - m));
      }
    }
  }
  return {"means",
          {between.check(), symmetry.check(), reflexive.check(), monotone.check(),
           affine.check()}};
}

bool opposite(Relation a, Relation b) {
  return (a == Relation::LEQ && b == Relation::GEQ) || (a == Relation::GEQ && b == Relation::LEQ);
}

SuiteReport compare_suite(const SuiteConfig& cfg) {
  const Interval I(1.0, 10.0);
  const Catalog catalog = Catalog::standard(I);
  const std::vector<NamedGenerator> members = catalog.smooth();
  const VectorSampler sampler(cfg.seed, cfg.samples);
  const CompareOptions opts{cfg.grid_n, {}};

  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  std::size_t order_failures = 0;
  std::size_t order_pairs = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j) continue;
      const Generator& f = members[i].generator;
      const Generator& g = members[j].generator;
      const ComparisonReport r = compare_all(f, g, sampler, opts);
      ++pairs;
      bool agree = r.consistent;
      for (const ComparisonVerdict& v : r.verdicts) {
        agree = agree && !opposite(v.relation, r.verdicts.front().relation);
      }
      if (!agree) {
        ++disagreements;
        if (first_bad.empty()) first_bad = members[i].name + " vs " + members[j].name;
      }
      const auto* pf = std::get_if<PowerDesc>(&f.descriptor().node);
      const auto* pg = std::get_if<PowerDesc>(&g.descriptor().node);
      const bool lf = std::holds_alternative<LogDesc>(f.descriptor().node);
      const bool lg = std::holds_alternative<LogDesc>(g.descriptor().node);
      if ((pf || lf) && (pg || lg)) {
        const double p = pf ? pf->p : 0.0;
        const double q = pg ? pg->p : 0.0;
        if (p < q) {
          ++order_pairs;
          if (r.verdicts.front().relation != Relation::LEQ) ++order_failures;
        }
      }
    }
  }
  return {"compare",
          {flag("method agreement", disagreements == 0, static_cast<double>(disagreements),
                fmt::format("{} ordered pairs{}", pairs,
                            first_bad.empty() ? "" : ", first disagreement " + first_bad)),
           flag("power order", order_failures == 0, static_cast<double>(order_failures),
                fmt::format("{} pairs with p < q", order_pairs))}};
}

struct NamedFamily {
  std::string name;
  std::vector<Generator> members;
};

SuiteReport envelopes_suite(const SuiteConfig& cfg) {
  const Interval a(1.0, 2.0);
  const Interval b(1.0, 10.0);
  const Interval c(0.5, 2.0);
  const std::vector<NamedFamily> families{
      {"power 0.5, power 2 on [1,2]", {Generator::power(0.5, a), Generator::power(2.0, a)}},
      {"exp 1, exp 2 on [1,2]", {Generator::exponential(1.0, a), Generator::exponential(2.0, a)}},
      {"power 1, power 2 on [1,10]", {Generator::power(1.0, b), Generator::power(2.0, b)}},
      {"power 2, exp 1 on [0.5,2]", {Generator::power(2.0, c), Generator::exponential(1.0, c)}},
  };
  const VectorSampler sampler(cfg.seed, cfg.samples);
  SuiteReport report{"envelopes", {}};
  for (const NamedFamily& fam : families) {
    const Interval I = fam.members.front().interval();
    const Catalog catalog = Catalog::standard(I);
    EnvelopeOptions opts;
    opts.grid_n = cfg.grid_n;
    opts.bounds = catalog.generators();
    const CompareOptions copts{cfg.grid_n, {}};
    for (EnvelopeKind kind : {EnvelopeKind::Sup, EnvelopeKind::Inf}) {
      const std::string label = fam.name + " " + to_string(kind);
      const EnvelopeResult r2 = envelope_generator_c2(fam.members, kind, opts);
      const EnvelopeResult r1 = envelope_generator_c1(fam.members, kind, opts);
      const double d = normalized_distance(r1.generator, r2.generator, cfg.grid_n);
      report.checks.push_back(flag(label + ": pathway agreement", d <= 1e-5, d,
                                   "normalized sup-distance, tolerance 1e-05"));
      for (const EnvelopeResult* r : {&r2, &r1}) {
        const bool c2 = std::holds_alternative<RatioEnvelope>(r->envelope);
        const VerificationReport v = verify_envelope(*r, fam.members, catalog, sampler, copts);
        const bool ok = v.passed && v.witness_count == 0 && r->certified();
        report.checks.push_back(flag(
            label + (c2 ? ": c2 certificates" : ": c1 certificates"), ok,
            std::max(v.worst_ratio_margin, v.worst_empirical_margin),
            fmt::format("{} checks, {} witnesses", v.checks.size(), v.witness_count)));
      }
      const ArgVector probe{I.lo() + 0.2 * I.width(), I.lo() + 0.9 * I.width()};
      try {
        const UqaReport u = uqa_lqa_report(fam.members, probe, catalog, r1, copts);
        report.checks.push_back(
            flag(label + ": catalog bound", u.consistent,
                 std::abs(u.catalog_bound - u.envelope_mean),
                 fmt::format("envelope mean {:.17g}, best bound {:.17g} ({})", u.envelope_mean,
                             u.catalog_bound, u.attained_by)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoUpperBoundInCatalog) throw;
      }
    }
  }
  return report;
}

bool strictly_decreasing_to_zero(const std::vector<double>& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (!(d[i + 1] < d[i])) return false;
  }
  return !d.empty() && d.back() == 0.0;
}

SuiteReport regularize_suite(const SuiteConfig& cfg) {
  SuiteReport report{"regularize", {}};
  const Interval I(0.5, 2.0);
  const Generator id = Generator::power(1.0, I);
  const Generator desk = Generator::piecewise(id, KinkSpec{{1.0, 1.0, 0.5}});
  const Regularization r = regularize(desk, Projection::Upper);
  const double d = normalized_distance(r.projection, id, cfg.grid_n);
  report.checks.push_back(flag("one-kink example heals to identity",
                               r.trace.healed.size() == 1 && d <= 1e-9, d,
                               fmt::format("{} steps", r.trace.healed.size())));

  double worst = 0.0;
  for (const ArgVector& v : VectorSampler(cfg.seed, cfg.samples).draw(I)) {
    double s = 0.0;
    for (double x : v) s += x;
    worst = std::max(worst, std::abs(qa_mean(r.projection, v) - s / static_cast<double>(v.size())));
  }
  report.checks.push_back(flag("projection mean is arithmetic", worst <= 1e-8, worst,
                               "tolerance 1e-08"));

  const Generator two = Generator::piecewise(
      Generator::exponential(1.0, I), KinkSpec{{0.8, 1.0, 0.6}, {1.6, 1.0, 0.7}});
  const Generator lower = Generator::piecewise(id, KinkSpec{{0.9, 0.5, 1.0}, {1.5, 1.0, 3.0}});
  bool decreasing = true;
  for (const auto& [g, dir] : {std::pair{desk, Projection::Upper}, std::pair{two, Projection::Upper},
                               std::pair{lower, Projection::Lower}}) {
    decreasing = decreasing && strictly_decreasing_to_zero(regularize(g, dir).trace.pal91_distances);
  }
  report.checks.push_back(flag("pal91 distances decrease to zero", decreasing, 0.0,
                               "three regularization traces"));

  const Regularization left = regularize(two, Projection::Upper, 0.7);
  const Regularization right = regularize(two, Projection::Upper, 1.9);
  const double orders = normalized_distance(left.projection, right.projection, cfg.grid_n);
  report.checks.push_back(flag("processing order does not matter", orders <= 1e-9, orders,
                               "two anchors, tolerance 1e-09"));
  return report;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"means", "compare", "envelopes", "regularize"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  static const std::map<std::string, std::function<SuiteReport(const SuiteConfig&)>> suites{
      {"means", means_suite},
      {"compare", compare_suite},
      {"envelopes", envelopes_suite},
      {"regularize", regularize_suite}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw Error(ErrorKind::InvalidArgument, "unknown suite " + name);
  return it->second(cfg);
}

}  // namespace qam
