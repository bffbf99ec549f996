#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "qam/error.hpp"
#include "qam/lattice_c1.hpp"
#include "qam/lattice_smooth.hpp"
#include "qam/oracle.hpp"

using namespace qam;

TEST_CASE("standard catalog") {
  const Catalog c = Catalog::standard(Interval(1.0, 10.0));
  CHECK(c.generators().size() == 13);
  CHECK(c.smooth().size() == 11);
  CHECK(c.at("power:0.5").family() == Family::Power);
  CHECK(c.at("power:0").family() == Family::Log);
  CHECK(c.at("exp:-1").family() == Family::Exponential);
  CHECK_FALSE(c.at("piecewise:concave").is_c1());
  CHECK_THROWS_AS(c.at("power:7"), Error);
  CHECK(Catalog::standard(Interval(-1.0, 1.0)).generators().size() == 5);
}

TEST_CASE("verify envelope of two powers") {
  const Interval I(1.0, 10.0);
  const Catalog c = Catalog::standard(I);
  const std::vector<Generator> fam{Generator::power(1.0, I), Generator::power(2.0, I)};
  const EnvelopeResult u = envelope_generator_c1(fam, EnvelopeKind::Sup);
  CHECK(equivalent(u.generator, Generator::power(2.0, I)));
  const VerificationReport r = verify_envelope(u, fam, c, VectorSampler(42, 500));
  CHECK(r.passed);
  CHECK(r.witness_count == 0);
  bool saw_power3 = false;
  for (const CheckRecord& k : r.checks) {
    if (k.check == "minimality" && k.subject == "power:3") saw_power3 = true;
  }
  CHECK(saw_power3);
}

TEST_CASE("singleton verification reduces to equivalence") {
  const Interval I(1.0, 10.0);
  const std::vector<Generator> fam{Generator::log(I)};
  const EnvelopeResult u = envelope_generator_c2(fam, EnvelopeKind::Sup);
  const VerificationReport r = verify_envelope(u, fam, Catalog::standard(I), VectorSampler(1, 300));
  CHECK(r.passed);
  CHECK(r.checks[0].relation == Relation::EQUIV);
}

TEST_CASE("verification flags a wrong envelope") {
  const Interval I(1.0, 10.0);
  const std::vector<Generator> fam{Generator::power(1.0, I), Generator::power(2.0, I)};
  EnvelopeResult u = envelope_generator_c1(fam, EnvelopeKind::Sup);
  u.generator = Generator::power(1.5, I);
  const VerificationReport r = verify_envelope(u, fam, Catalog::standard(I), VectorSampler(1, 300));
  CHECK_FALSE(r.passed);
  CHECK(r.witness_count > 0);
}

TEST_CASE("crossing envelope against the catalog") {
  const Interval I(0.5, 2.0);
  const std::vector<Generator> fam{Generator::power(2.0, I), Generator::exponential(1.0, I)};
  for (EnvelopeKind kind : {EnvelopeKind::Sup, EnvelopeKind::Inf}) {
    const EnvelopeResult u = envelope_generator_c1(fam, kind);
    const VerificationReport r = verify_envelope(u, fam, Catalog::standard(I), VectorSampler(5, 500));
    CHECK(r.passed);
    CHECK(r.witness_count == 0);
  }
}

TEST_CASE("uqa and lqa examples") {
  const Interval I(1.0, 10.0);
  const Catalog c = Catalog::standard(I);
  const std::vector<Generator> p1{Generator::power(1.0, I)};
  const UqaReport a = uqa_lqa_report(p1, ArgVector{1, 3}, c, envelope_generator_c2(p1, EnvelopeKind::Sup));
  CHECK(a.envelope_mean == doctest::Approx(2.0));
  CHECK(a.catalog_bound == doctest::Approx(2.0));
  CHECK(a.consistent);

  const std::vector<Generator> p12{Generator::power(1.0, I), Generator::power(2.0, I)};
  const UqaReport b = uqa_lqa_report(p12, ArgVector{1, 7}, c, envelope_generator_c1(p12, EnvelopeKind::Sup));
  CHECK(b.envelope_mean == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(b.catalog_bound >= 5.0 - 1e-10);

  const std::vector<Generator> lp{Generator::log(I), Generator::power(1.0, I)};
  const UqaReport d = uqa_lqa_report(lp, ArgVector{2, 8}, c, envelope_generator_c1(lp, EnvelopeKind::Sup));
  CHECK(d.envelope_mean == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(d.consistent);
}

TEST_CASE("no catalog bound") {
  const Interval I(1.0, 10.0);
  const std::vector<Generator> fam{Generator::exponential(3.0, I)};
  try {
    uqa_lqa_report(fam, ArgVector{2, 3}, Catalog::standard(I),
                   envelope_generator_c2(fam, EnvelopeKind::Sup));
    FAIL("expected NoUpperBoundInCatalog");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoUpperBoundInCatalog);
  }
}

TEST_CASE("uqa inequality on random catalog families") {
  const Interval I(1.0, 10.0);
  const Catalog c = Catalog::standard(I);
  const auto smooth = c.smooth();
  std::mt19937_64 rng(50);
  std::uniform_int_distribution<std::size_t> pick(0, smooth.size() - 1);
  const auto vectors = VectorSampler(50, 50).draw(I);
  std::size_t checked = 0;
  for (int k = 0; k < 50; ++k) {
    const std::vector<Generator> fam{smooth[pick(rng)].generator, smooth[pick(rng)].generator};
    const EnvelopeKind kind = k % 2 ? EnvelopeKind::Sup : EnvelopeKind::Inf;
    EnvelopeOptions opts;
    const EnvelopeResult u = envelope_generator_c2(fam, kind, opts);
    std::optional<UqaReport> r;
    try {
      r = uqa_lqa_report(fam, vectors[k], c, u);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoUpperBoundInCatalog);
    }
    if (r) {
      INFO("k = ", k, ", envelope ", r->envelope_mean, ", bound ", r->catalog_bound, " (",
           r->attained_by, ")");
      CHECK(r->consistent);
      ++checked;
    }
  }
  CHECK(checked > 25);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 4);
  CHECK_THROWS_AS(run_suite("nope"), Error);
  SuiteConfig cfg;
  cfg.samples = 200;
  CHECK(run_suite("regularize", cfg).passed());
  CHECK(run_suite("compare", cfg).passed());
}
