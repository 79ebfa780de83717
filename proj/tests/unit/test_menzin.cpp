#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tractrix/error.hpp"
#include "tractrix/menzin.hpp"
#include "tractrix/random.hpp"

using namespace tractrix;
using std::numbers::pi;

namespace {

CurveSpec circle_spec(double r) {
  CurveSpec s;
  s.kind = CurveKind::circle;
  s.radius = r;
  return s;
}

CurveSpec ellipse_spec(double a, double b) {
  CurveSpec s;
  s.kind = CurveKind::ellipse;
  s.semi_major = a;
  s.semi_minor = b;
  return s;
}

}  // namespace

TEST_CASE("minimal osculating radius") {
  CHECK(min_osculating_radius(make_curve(circle_spec(1.0))) == doctest::Approx(1.0));
  CHECK(min_osculating_radius(make_curve(ellipse_spec(2.0, 1.0))) == doctest::Approx(0.5).epsilon(1e-6));
  CurveSpec f;
  f.kind = CurveKind::fourier_support;
  f.cos_coeffs = {1.0, 0.0, 0.1};
  // p + p'' = 1 - 3 * 0.1 cos(2 phi) has minimum 0.7.
  CHECK(min_osculating_radius(make_curve(f)) == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("critical length of the unit circle") {
  const auto c = critical_length(make_curve(circle_spec(1.0)));
  CHECK(c.wheelbase == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(c.upper - c.lower <= 2e-6);
  REQUIRE_FALSE(c.transitions.empty());
  // One scan sample lands on l = 1 exactly, where the map is parabolic.
  CHECK(c.transitions[0].below != MonodromyClass::elliptic);
  CHECK(c.transitions[0].above == MonodromyClass::elliptic);
  for (const auto& s : c.curve) {
    if (s.wheelbase < c.lower) CHECK(s.cls != MonodromyClass::elliptic);
  }
}

TEST_CASE("Menzin report for the 2:1 ellipse") {
  const auto rep = menzin_verify(make_curve(ellipse_spec(2.0, 1.0)));
  CHECK(rep.passed);
  CHECK(rep.failures.empty());
  CHECK(rep.small.cls == MonodromyClass::hyperbolic);
  CHECK(rep.small.wheelbase == doctest::Approx(0.25));
  CHECK(rep.large.cls == MonodromyClass::elliptic);
  CHECK(rep.large.wheelbase == doctest::Approx(10.0 * std::sqrt(2.0)));
  CHECK(rep.critical_length >= std::sqrt(2.0));
  CHECK(rep.area_ratio <= 1.0 + 1e-4);
  CHECK(rep.bound_check);
  CHECK(rep.radius_below_critical);
  REQUIRE(rep.defect);
  CHECK(rep.defect->holds);
}

TEST_CASE("critical length is invariant under rigid motions") {
  auto spec = ellipse_spec(2.0, 1.0);
  const double base = critical_length(make_curve(spec)).wheelbase;
  spec.center = {3.0, -7.0};
  spec.rotation = 0.8;
  CHECK(critical_length(make_curve(spec)).wheelbase == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("monodromy trace from the flow agrees with the fitted map") {
  const auto track = make_curve(ellipse_spec(1.5, 1.0));
  for (double ell : {0.3, 0.9, 1.4, 3.0}) {
    const auto rep = monodromy(track, {ell});
    CHECK(monodromy_trace(track, ell) == doctest::Approx(std::abs(rep.trace)).epsilon(1e-6));
  }
}

TEST_CASE("defect bound for circles") {
  auto d = defect_bound(make_curve(circle_spec(2.0)), 1.0);
  CHECK(std::abs(d.defect) < 1e-9);
  CHECK(d.rear_area == doctest::Approx(3 * pi).epsilon(1e-9));
  CHECK(d.bound == doctest::Approx(-12 * pi * pi).epsilon(1e-9));
  CHECK(d.holds);
  CHECK(d.rear_turning == doctest::Approx(2 * pi));
  d = defect_bound(make_curve(circle_spec(1.0)), 1.0);
  CHECK(std::abs(d.rear_area) < 1e-6);
  CHECK(std::abs(d.bound) < 1e-4);
  CHECK(d.holds);
  CHECK_THROWS_AS(defect_bound(make_curve(circle_spec(1.0)), 2.0), ValidationError);
}

TEST_CASE("defect bound for the ellipse at unit wheelbase") {
  const auto track = make_curve(ellipse_spec(2.0, 1.0));
  const auto d = defect_bound(track, 1.0);
  CHECK(d.front_area == doctest::Approx(2 * pi));
  CHECK(d.defect == doctest::Approx(d.front_length * d.front_length - 8 * pi * pi));
  CHECK(d.defect > 0.0);
  CHECK(d.holds);
  CHECK(d.rear_area == doctest::Approx(pi).epsilon(1e-6));
  CHECK(d.rear_area_direct == doctest::Approx(d.rear_area).epsilon(1e-6));
  CHECK(d.rear_turning == doctest::Approx(2 * pi));
}

TEST_CASE("rear tracks as l approaches l0 from below") {
  const auto track = make_curve(ellipse_spec(2.0, 1.0));
  const auto c = critical_length(track);
  const auto far = defect_bound(track, 0.99 * c.lower);
  const auto near = defect_bound(track, c.lower);
  CHECK(std::abs(near.rear_length) < std::abs(far.rear_length));
  CHECK(std::abs(near.rear_length) < 1e-2);
  // At the critical length the closed rear curve has zero length and
  // non-positive area, which is the area inequality itself.
  CHECK(near.rear_area <= 1e-6);
  CHECK(near.rear_area == doctest::Approx(near.front_area - pi * c.lower * c.lower).epsilon(1e-6));
  CHECK(near.rear_turning == doctest::Approx(2 * pi));
  const auto tracks = nested_rear_tracks(track, {0.3, 0.8, 1.2, 5.0});
  CHECK(tracks.size() == 3);
  for (const auto& r : tracks) CHECK(r.closed);
}

TEST_CASE("random convex tracks") {
  Rng rng(314);
  for (int trial = 0; trial < 2; ++trial) {
    const auto track = make_curve(random_convex_spec(rng));
    const double r = min_osculating_radius(track);
    CHECK(monodromy(track, {0.9 * r}).cls == MonodromyClass::hyperbolic);
    const auto rep = menzin_verify(track);
    CHECK(rep.passed);
    CHECK(rep.area_ratio <= 1.0 + 1e-3);
  }
}

TEST_CASE("invalid tracks") {
  CurveSpec bean;
  bean.kind = CurveKind::samples;
  for (int i = 0; i < 64; ++i) {
    const double phi = 2 * pi * i / 64;
    bean.points.push_back((1.0 + 0.4 * std::cos(2 * phi)) * unit(phi));
  }
  CHECK_THROWS_AS(menzin_verify(make_curve(bean)), ValidationError);
  CHECK_THROWS_AS(menzin_verify(make_segment({0, 0}, {1, 0})), ValidationError);
  auto twice = circle_spec(1.0);
  twice.traversals = 2;
  CHECK_THROWS_AS(menzin_verify(make_curve(twice)), ValidationError);
}

TEST_CASE("a scan capped too low reports failure instead of throwing") {
  MenzinOptions opts;
  opts.cap_factor = 0.9;
  const auto rep = menzin_verify(make_curve(ellipse_spec(2.0, 1.0)), opts);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.failures.empty());
  CHECK_FALSE(rep.critical);
  // A cap below the osculating radius leaves nothing to scan.
  opts.cap_factor = 0.8;
  CHECK_THROWS_AS(menzin_verify(make_curve(circle_spec(1.0)), opts), ValidationError);
}
