#include <doctest.h>

#include <cmath>

#include "qam/compare.hpp"
#include "qam/error.hpp"
#include "qam/regularize.hpp"

using namespace qam;

namespace {

const Interval kDesk(0.5, 2.0);

Generator desk() { return Generator::piecewise(Generator::power(1.0, kDesk), KinkSpec{{1.0, 1.0, 0.5}}); }

Generator two_kinks() {
  return Generator::piecewise(Generator::exponential(1.0, kDesk),
                              KinkSpec{{0.8, 1.0, 0.6}, {1.6, 1.0, 0.7}});
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("one step heals the desk example into the identity") {
  const Generator f = desk();
  CHECK(f.value(1.5) == doctest::Approx(1.25));
  const Generator g = regularize_step(f, std::nullopt, 1.0, Projection::Upper);
  CHECK(g.kinks().empty());
  for (double x : {0.5, 0.9, 1.0, 1.3, 2.0}) CHECK(g.value(x) == doctest::Approx(x));
}

TEST_CASE("a step on a kinkless generator changes nothing") {
  const Generator f = Generator::exponential(1.0, kDesk);
  const Generator g = regularize_step(f, std::nullopt, std::nullopt, Projection::Upper);
  CHECK(g.value(1.3) == f.value(1.3));
  const Regularization r = regularize(f, Projection::Upper);
  CHECK(r.trace.iterates.size() == 1);
  CHECK(r.trace.pal91_distances == std::vector<double>{0.0});
  CHECK(equivalent(r.projection, f));
}

TEST_CASE("a paired step removes both designated kinks") {
  const Generator f = two_kinks();
  const Generator g = regularize_step(f, 0.8, 1.6, Projection::Upper);
  CHECK(g.kinks().empty());
  const Generator h = regularize_step(f, 0.8, std::nullopt, Projection::Upper);
  REQUIRE(h.kinks().size() == 1);
  CHECK(h.kinks()[0].z == 1.6);
  CHECK(h.left_derivative(0.8) == doctest::Approx(h.right_derivative(0.8)).epsilon(1e-12));
  CHECK(kind_of([&] { regularize_step(f, 0.9, std::nullopt, Projection::Upper); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("regularize the desk example") {
  const Regularization r = regularize(desk(), Projection::Upper);
  CHECK(r.trace.healed.size() == 1);
  CHECK(equivalent(r.projection, Generator::power(1.0, kDesk)));
  for (const ArgVector& v : VectorSampler(2024, 1000).draw(kDesk)) {
    double s = 0.0;
    for (double x : v) s += x;
    CHECK(std::abs(qa_mean(r.projection, v) - s / static_cast<double>(v.size())) <= 1e-8);
  }
  REQUIRE(r.trace.pal91_distances.size() == 2);
  CHECK(r.trace.pal91_distances[0] > 0.0);
  CHECK(r.trace.pal91_distances[1] == 0.0);
}

TEST_CASE("projection probe") {
  const Generator f = desk();
  const Generator m = regularize(f, Projection::Upper).projection;
  for (double p : {1.0, 2.0}) {
    const Generator g = Generator::power(p, kDesk);
    REQUIRE(holds_leq(compare_ratio(f, g).relation));
    CHECK(holds_leq(compare_ratio(m, g).relation));
  }
  CHECK(holds_leq(compare_empirical(f, m, VectorSampler(1, 500)).relation));
}

TEST_CASE("two-kink trace") {
  const Generator f = two_kinks();
  const Regularization r = regularize(f, Projection::Upper);
  CHECK(r.trace.kinks_remaining == std::vector<std::size_t>{2, 1, 0});
  REQUIRE(r.trace.pal91_distances.size() == 3);
  CHECK(r.trace.pal91_distances[0] > r.trace.pal91_distances[1]);
  CHECK(r.trace.pal91_distances[1] > r.trace.pal91_distances[2]);
  CHECK(r.trace.pal91_distances[2] == 0.0);
  CHECK(r.projection.is_c1());
  for (const Kink& k : f.kinks()) {
    const double h = 1e-7;
    const double left = (r.projection.value(k.z) - r.projection.value(k.z - h)) / h;
    const double right = (r.projection.value(k.z + h) - r.projection.value(k.z)) / h;
    CHECK(std::abs(left - right) <= 1e-6 * std::abs(left));
  }
}

TEST_CASE("iterates grow pointwise and in mean") {
  const Regularization r = regularize(two_kinks(), Projection::Upper);
  const VectorSampler sampler(9, 300);
  const Generator dominating = Generator::exponential(2.0, kDesk);
  for (std::size_t n = 0; n + 1 < r.trace.iterates.size(); ++n) {
    const Generator& a = r.trace.iterates[n];
    const Generator& b = r.trace.iterates[n + 1];
    const double z = r.trace.healed[n];
    for (std::size_t i = 0; i < 257; ++i) {
      const double x = kDesk.node(i, 257);
      const bool outside = z < r.anchor ? x < z : x > z;
      if (outside) {
        CHECK(b.value(x) >= a.value(x) - 1e-12);
      } else {
        CHECK(b.value(x) == doctest::Approx(a.value(x)).epsilon(1e-14));
      }
    }
    CHECK(holds_leq(compare_empirical(a, b, sampler).relation));
    CHECK(holds_leq(compare_convexity(b, dominating).relation));
  }
}

TEST_CASE("regularization is idempotent") {
  const Regularization r = regularize(two_kinks(), Projection::Upper);
  const Regularization again = regularize(r.projection, Projection::Upper);
  CHECK(again.trace.healed.empty());
  CHECK(normalized_distance(again.projection, r.projection) == 0.0);
}

TEST_CASE("processing order does not change the projection") {
  const Generator f = two_kinks();
  const Regularization a = regularize(f, Projection::Upper, 0.6);
  const Regularization b = regularize(f, Projection::Upper, 1.9);
  const Regularization c = regularize(f, Projection::Upper, 1.2);
  CHECK(a.trace.healed == std::vector<double>{0.8, 1.6});
  CHECK(b.trace.healed == std::vector<double>{1.6, 0.8});
  CHECK(equivalent(a.projection, b.projection));
  CHECK(equivalent(a.projection, c.projection));
}

TEST_CASE("lower projection") {
  const Generator f =
      Generator::piecewise(Generator::power(1.0, kDesk), KinkSpec{{0.9, 0.5, 1.0}, {1.5, 1.0, 3.0}});
  const Regularization r = regularize(f, Projection::Lower);
  CHECK(r.projection.kinks().empty());
  CHECK(holds_geq(compare_empirical(f, r.projection, VectorSampler(3, 300)).relation));
  CHECK(r.trace.pal91_distances.back() == 0.0);
}

TEST_CASE("slope order and mixed kinks") {
  const Generator lower_kinks =
      Generator::piecewise(Generator::power(1.0, kDesk), KinkSpec{{1.0, 0.5, 1.0}});
  CHECK(kind_of([&] { regularize(lower_kinks, Projection::Upper); }) ==
        ErrorKind::SlopeOrderViolation);
  CHECK(kind_of([&] { regularize_step(lower_kinks, std::nullopt, 1.0, Projection::Upper); }) ==
        ErrorKind::SlopeOrderViolation);
  const Generator mixed =
      Generator::piecewise(Generator::power(1.0, kDesk), KinkSpec{{0.8, 1.0, 0.5}, {1.5, 0.5, 1.0}});
  CHECK(kind_of([&] { regularize(mixed, Projection::Upper); }) == ErrorKind::EmptyProjection);
  CHECK(kind_of([&] { regularize(mixed, Projection::Lower); }) == ErrorKind::EmptyProjection);
  CHECK(kind_of([&] { regularize(desk(), Projection::Upper, 1.0); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("default anchor sits in the largest kink-free gap") {
  CHECK(default_regularization_anchor(desk()) == doctest::Approx(1.5));
  CHECK(default_regularization_anchor(two_kinks()) == doctest::Approx(1.2));
}
