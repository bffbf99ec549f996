// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qam/compare.hpp"
#include "qam/error.hpp"
#include "qam/lattice_c1.hpp"
#include "qam/lattice_smooth.hpp"
#include "qam/oracle.hpp"
#include "qam/regularize.hpp"

using namespace qam;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kGrid = 4097;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool strictly_decreasing_to_zero(const std::vector<double>& d) {
  if (d.size() < 2 || d.back() != 0.0) return false;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (!(d[i + 1] < d[i])) return false;
  }
  return true;
}

struct Family {
  std::string name;
  std::vector<Generator> members;
};

Interval interval_of(const Family& f) { return f.members.front().interval(); }

const Interval kUnitPair(1.0, 2.0);
const Interval kWide(1.0, 10.0);
const Interval kCross(0.5, 2.0);

const Family kPowers{"{P0.5, P2} on [1,2]",
                     {Generator::power(0.5, kUnitPair), Generator::power(2.0, kUnitPair)}};
const Family kPowersWide{"{P1, P2} on [1,10]",
                         {Generator::power(1.0, kWide), Generator::power(2.0, kWide)}};
const Family kExps{"{E1, E2} on [1,2]",
                   {Generator::exponential(1.0, kUnitPair), Generator::exponential(2.0, kUnitPair)}};
const Family kCrossing{"{P2, E1} on [0.5,2]",
                       {Generator::power(2.0, kCross), Generator::exponential(1.0, kCross)}};

EnvelopeOptions envelope_options(const Interval& I) {
  EnvelopeOptions opts;
  opts.grid_n = kGrid;
  opts.bounds = Catalog::standard(I).generators();
  return opts;
}

// Envelopes built in criteria 3 and 5, certified in criterion 7.
struct Built {
  std::string label;
  Family family;
  EnvelopeResult result;
};
std::vector<Built> built;

Outcome mean_axioms() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Catalog> catalogs{Catalog::standard(kWide),
                                      Catalog::standard(Interval(-1.0, 1.0))};
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> length(2, 10);

  const std::size_t draws = 10000;
  std::size_t violations = 0;
  double worst_sym = 0.0, worst_refl = 0.0, worst_mono = 0.0, worst_aff = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    const Catalog& cat = catalogs[d % 2];
    const auto& gens = cat.generators();
    const Generator& g = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)].generator;
    const Interval I = cat.interval();
    ArgVector v(length(rng));
    for (double& x : v) x = I.lo() + unit(rng) * I.width();

    const double m = qa_mean(g, v);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    bool ok = *mn <= m && m <= *mx;

    ArgVector p = v;
    std::shuffle(p.begin(), p.end(), rng);
    const double sym = std::abs(qa_mean(g, p) - m) / std::max(std::abs(m), 1e-300);
    worst_sym = std::max(worst_sym, sym);
    ok = ok && (m == 0.0 ? qa_mean(g, p) == 0.0 : sym <= 1e-13);

    const ArgVector same(v.size(), v.front());
    const double refl =
        std::abs(qa_mean(g, same) - v.front()) / std::max(1.0, std::abs(v.front()));
    worst_refl = std::max(worst_refl, refl);
    ok = ok && refl <= 1e-12;

    ArgVector w = v;
    for (double& x : w) x += unit(rng) * (I.hi() - x);
    const double mono = m - qa_mean(g, w);
    worst_mono = std::max(worst_mono, mono);
    ok = ok && mono <= 1e-12;

    const double alpha = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + 9.9 * unit(rng));
    const double beta = -10.0 + 20.0 * unit(rng);
    const double aff = std::abs(qa_mean(Generator::affine(g, alpha, beta), v) - m);
    worst_aff = std::max(worst_aff, aff);
    ok = ok && aff <= 1e-10;

    if (!ok) ++violations;
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 10.0,
          fmt::format("{} draws, {} violations, worst symmetry {:.2g}, reflexivity {:.2g}, "
                      "monotonicity {:.2g}, affine {:.2g}, {:.2f} s",
                      draws, violations, worst_sym, worst_refl, worst_mono, worst_aff, t)};
}

Outcome comparability() {
  const Catalog cat = Catalog::standard(kWide);
  const VectorSampler sampler(kSeed, 1000);
  const CompareOptions opts{kGrid, {}};
  std::size_t power_pairs = 0, exp_pairs = 0, failures = 0;
  std::string first_bad;
  auto check = [&](const std::string& fn, const std::string& gn) {
    const Generator& f = cat.at(fn);
    const Generator& g = cat.at(gn);
    const Relation r = compare_ratio(f, g, opts).relation;
    const Relation c = compare_convexity(f, g, opts).relation;
    const Relation e = compare_empirical(f, g, sampler, opts).relation;
    if (!(r == Relation::LEQ && c == Relation::LEQ && e == Relation::LEQ)) {
      ++failures;
      if (first_bad.empty()) {
        first_bad = fmt::format(", first failure {} vs {}: {} {} {}", fn, gn, to_string(r),
                                to_string(c), to_string(e));
      }
    }
  };
  for (std::size_t i = 0; i < std::size(kCatalogPowers); ++i) {
    for (std::size_t j = i + 1; j < std::size(kCatalogPowers); ++j) {
      check(fmt::format("power:{:g}", kCatalogPowers[i]), fmt::format("power:{:g}", kCatalogPowers[j]));
      ++power_pairs;
    }
  }
  for (std::size_t i = 0; i < std::size(kCatalogExponentials); ++i) {
    for (std::size_t j = i + 1; j < std::size(kCatalogExponentials); ++j) {
      check(fmt::format("exp:{:g}", kCatalogExponentials[i]),
            fmt::format("exp:{:g}", kCatalogExponentials[j]));
      ++exp_pairs;
    }
  }
  return {power_pairs == 28 && failures == 0,
          fmt::format("{} power pairs and {} exponential pairs, p < q, all three methods LEQ: "
                      "{} failures{}",
                      power_pairs, exp_pairs, failures, first_bad)};
}

Outcome closed_forms() {
  const auto t0 = std::chrono::steady_clock::now();
  const EnvelopeResult p = envelope_generator_c2(kPowers.members, EnvelopeKind::Sup,
                                                 envelope_options(kUnitPair));
  const EnvelopeResult e = envelope_generator_c2(kExps.members, EnvelopeKind::Sup,
                                                 envelope_options(kUnitPair));
  const double t = seconds_since(t0);
  const double dp = normalized_distance(p.generator, Generator::power(2.0, kUnitPair), kGrid);
  const double de = normalized_distance(e.generator, Generator::exponential(2.0, kUnitPair), kGrid);
  built.push_back({"sup c2 " + kPowers.name, kPowers, p});
  built.push_back({"sup c2 " + kExps.name, kExps, e});
  return {dp <= 1e-5 && de <= 1e-5 && t < 5.0,
          fmt::format("distance to P2 {:.3g}, to E2 {:.3g}, {:.2f} s", dp, de, t)};
}

Outcome delta_construction() {
  const std::vector<std::pair<FunctionFamily, double>> families{
      {FunctionFamily{Interval(-1.0, 1.0), 1025,
                      {[](double x) { return x * x; }, [](double x) { return -x * x; }}},
       0.0},
      {FunctionFamily{Interval(0.0, 1.0), 1025,
                      {[](double x) { return std::exp(x); }, [](double x) { return std::exp(2.0 * x); }}},
       0.5},
  };
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_add = 0.0;
  double worst_oracle = 0.0;
  std::size_t triples = 0;
  for (const auto& [fam, x0] : families) {
    for (int k = 0; k < 100; ++k) {
      std::array<double, 3> t{};
      for (double& x : t) x = fam.interval.lo() + unit(rng) * fam.interval.width();
      std::sort(t.begin(), t.end());
      const double lhs = capital_delta(fam, t[0], t[1]) + capital_delta(fam, t[1], t[2]);
      worst_add = std::max(worst_add, std::abs(lhs - capital_delta(fam, t[0], t[2])));
      ++triples;
    }
    worst_oracle = std::max(
        worst_oracle, sup_order(fam, x0).sup_distance(derivative_envelope_oracle(fam, x0)));
  }
  return {worst_add <= 2e-10 && worst_oracle <= 1e-5,
          fmt::format("additivity worst {:.3g} over {} triples, sup_order vs oracle {:.3g}",
                      worst_add, triples, worst_oracle)};
}

Outcome pathway_agreement() {
  double worst = 0.0;
  std::vector<std::string> parts;
  for (const Family* f : {&kPowers, &kPowersWide, &kExps, &kCrossing}) {
    const Interval I = interval_of(*f);
    for (EnvelopeKind kind : {EnvelopeKind::Sup, EnvelopeKind::Inf}) {
      const EnvelopeResult c2 = envelope_generator_c2(f->members, kind, envelope_options(I));
      const EnvelopeResult c1 = envelope_generator_c1(f->members, kind, envelope_options(I));
      const double d = normalized_distance(c1.generator, c2.generator, kGrid);
      worst = std::max(worst, d);
      parts.push_back(fmt::format("{} {} {:.2g}", to_string(kind), f->name, d));
      built.push_back({to_string(kind) + " c2 " + f->name, *f, c2});
      built.push_back({to_string(kind) + " c1 " + f->name, *f, c1});
    }
  }
  return {worst <= 1e-5, fmt::format("worst {:.3g} ({})", worst, fmt::join(parts, "; "))};
}

Outcome desk_example() {
  const Generator id = Generator::power(1.0, kCross);
  const Generator desk = Generator::piecewise(id, KinkSpec{{1.0, 1.0, 0.5}});
  const Regularization r = regularize(desk, Projection::Upper);
  const double d = normalized_distance(r.projection, id, kGrid);

  double worst = 0.0;
  for (const ArgVector& v : VectorSampler(kSeed, 1000).draw(kCross)) {
    double s = 0.0;
    for (double x : v) s += x;
    worst = std::max(worst, std::abs(qa_mean(r.projection, v) - s / static_cast<double>(v.size())));
  }

  bool probe = true;
  for (double p : {1.0, 2.0}) {
    const Generator g = Generator::power(p, kCross);
    if (holds_leq(compare_ratio(desk, g).relation)) {
      probe = probe && holds_leq(compare_ratio(r.projection, g).relation);
    } else {
      probe = false;
    }
  }
  const bool ok = r.trace.healed.size() == 1 && d <= 1e-9 && worst <= 1e-8 && probe;
  return {ok, fmt::format("{} step(s), distance to identity {:.3g}, mean error {:.3g}, "
                          "projection probe {}",
                          r.trace.healed.size(), d, worst, probe ? "holds" : "fails")};
}

Outcome certificates() {
  std::size_t checks = 0, witnesses = 0, failed = 0;
  std::string first_bad;
  for (const Built& b : built) {
    const Interval I = interval_of(b.family);
    const VerificationReport v = verify_envelope(b.result, b.family.members, Catalog::standard(I),
                                                 VectorSampler(kSeed, 1000), CompareOptions{kGrid, {}});
    checks += v.checks.size();
    witnesses += v.witness_count;
    if (!(v.passed && v.witness_count == 0 && b.result.certified())) {
      ++failed;
      if (first_bad.empty()) first_bad = ", first failure " + b.label;
    }
  }
  return {failed == 0 && witnesses == 0 && !built.empty(),
          fmt::format("{} envelopes, {} checks, {} witnesses{}", built.size(), checks, witnesses,
                      first_bad)};
}

Outcome pal91_traces() {
  const Interval I = kCross;
  const Generator id = Generator::power(1.0, I);
  const std::vector<std::pair<Generator, Projection>> cases{
      {Generator::piecewise(id, KinkSpec{{1.0, 1.0, 0.5}}), Projection::Upper},
      {Generator::piecewise(Generator::exponential(1.0, I), KinkSpec{{0.8, 1.0, 0.6}, {1.6, 1.0, 0.7}}),
       Projection::Upper},
      {Generator::piecewise(id, KinkSpec{{0.9, 0.5, 1.0}, {1.5, 1.0, 3.0}}), Projection::Lower},
      {Generator::piecewise(Generator::power(2.0, I),
                            KinkSpec{{0.7, 1.0, 0.8}, {1.2, 1.0, 0.5}, {1.7, 1.0, 0.9}}),
       Projection::Upper},
  };
  const std::vector<Probe> fine = standard_probes(I, 11);
  std::size_t bad = 0;
  std::vector<std::string> lengths;
  for (const auto& [f, dir] : cases) {
    const Regularization r = regularize(f, dir);
    const bool ok = strictly_decreasing_to_zero(r.trace.pal91_distances) &&
                    strictly_decreasing_to_zero(pal91_convergence_report(r.trace, r.projection, fine));
    if (!ok) ++bad;
    lengths.push_back(std::to_string(r.trace.pal91_distances.size()));
  }
  return {bad == 0, fmt::format("{} traces (lengths {}), {} not strictly decreasing to 0",
                                cases.size(), fmt::join(lengths, ", "), bad)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"mean axioms", mean_axioms},
      {"comparability methods agree", comparability},
      {"closed-form sup envelopes", closed_forms},
      {"Delta additivity and order supremum", delta_construction},
      {"C1 and C2 pathways agree", pathway_agreement},
      {"one-kink regularization", desk_example},
      {"dominance and minimality certificates", certificates},
      {"ratio distances along traces", pal91_traces},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
