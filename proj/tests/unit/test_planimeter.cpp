#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tractrix/dynamics.hpp"
#include "tractrix/error.hpp"
#include "tractrix/planimeter.hpp"

using namespace tractrix;
using std::numbers::pi;

namespace {

FrontTrack circle(double r, Vec2 center = {0, 0}, int traversals = 1) {
  CurveSpec s;
  s.kind = CurveKind::circle;
  s.radius = r;
  s.center = center;
  s.traversals = traversals;
  return make_curve(s);
}

FrontTrack ellipse(double a, double b) {
  CurveSpec s;
  s.kind = CurveKind::ellipse;
  s.semi_major = a;
  s.semi_minor = b;
  return make_curve(s);
}

FrontTrack wobbly() {
  CurveSpec s;
  s.kind = CurveKind::fourier_support;
  s.cos_coeffs = {1.0, 0.2, 0.08, 0.03};
  s.sin_coeffs = {0.0, 0.0, 0.05, 0.0};
  return make_curve(s);
}

PlanimeterOptions boundary() {
  PlanimeterOptions o;
  o.start = PlanimeterStart::boundary;
  return o;
}

}  // namespace

TEST_CASE("area centroids") {
  CHECK(norm(centroid(circle(1.0, {3, -1})) - Vec2{3, -1}) < 1e-12);
  CHECK(norm(centroid(ellipse(2.0, 1.0))) < 1e-12);
  CurveSpec tri;
  tri.kind = CurveKind::polyline;
  tri.points = {{0, 0}, {3, 0}, {0, 3}};
  tri.fillet_radius = 1e-4;
  CHECK(norm(centroid(make_curve(tri)) - Vec2{1, 1}) < 1e-6);
  tri.fillet_radius = 0.0;
  CHECK(norm(centroid(make_curve(tri)) - Vec2{1, 1}) < 1e-3);
  CHECK_THROWS_AS(centroid(make_segment({0, 0}, {1, 1})), ValidationError);
}

TEST_CASE("unit circle at l = 10 from the centroid") {
  const auto r = measure(circle(1.0), 10.0, 0.0);
  CHECK(r.exact_area == doctest::Approx(pi));
  CHECK(r.mean_square_radius == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.correction_estimate == doctest::Approx(pi * (1.0 + 1.0 / 400.0)).epsilon(1e-12));
  CHECK(std::abs(r.estimate / r.correction_estimate - 1.0) < 2e-3);
  CHECK(r.estimate == doctest::Approx(r.deflection * 100.0));
}

TEST_CASE("residual decays like l^-3 from the centroid") {
  for (const auto& track : {circle(1.0), ellipse(1.5, 1.0), wobbly()}) {
    std::vector<double> res;
    for (double ell : {5.0, 10.0, 20.0, 40.0}) res.push_back(measure(track, ell, 0.0).residual_error);
    for (std::size_t i = 1; i < res.size(); ++i) {
      const double ratio = res[i - 1] / res[i];
      CHECK(ratio > 6.5);
      CHECK(ratio < 9.5);
    }
    const double slope = std::log(std::abs(res[3] / res[0])) / std::log(8.0);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.1));
  }
}

TEST_CASE("area identity closes for both starts") {
  for (const auto& track : {circle(1.0), ellipse(2.0, 1.0), wobbly()}) {
    const double a = std::abs(enclosed_area(track));
    for (double ell : {0.7, 3.0, 12.0}) {
      for (auto opts : {PlanimeterOptions{}, boundary()}) {
        const auto r = measure(track, ell, 0.9, opts);
        CAPTURE(ell);
        CAPTURE(to_string(opts.start));
        CHECK(std::abs(r.identity_gap) < 1e-8 * a);
      }
    }
  }
}

TEST_CASE("reversing the traversal negates the deflection") {
  const auto e = ellipse(2.0, 1.0);
  // By the reflection symmetry of the ellipse about its major axis.
  const auto fwd = measure(e, 5.0, 0.0);
  const auto rev = measure(e.reversed(), 5.0, 0.0);
  CHECK(rev.deflection == doctest::Approx(-fwd.deflection).epsilon(1e-9));
  CHECK(rev.exact_area == doctest::Approx(-fwd.exact_area));
  // Without symmetry only the sign and leading order agree.
  const auto w = wobbly();
  const auto wf = measure(w, 8.0, 0.4);
  const auto wr = measure(w.reversed(), 8.0, 0.4);
  CHECK(wr.deflection < 0.0);
  CHECK(wf.deflection > 0.0);
  CHECK(std::abs(wr.deflection + wf.deflection) < 0.05 * wf.deflection);
}

TEST_CASE("going out and back along the same arc sweeps no area") {
  const auto arc = circle(1.0).slice(0.0, 1.5);
  const double ell = 2.0;
  const double psi0 = 0.4;
  const auto leg1 = integrate_steering(arc, {ell}, arc.tangent_angle(0.0) - psi0);
  const double psi1 = arc.tangent_angle(arc.total_length()) - leg1.final_alpha();
  const auto back = arc.reversed();
  const auto leg2 = integrate_steering(back, {ell}, back.tangent_angle(0.0) - psi1);
  const double psi2 = back.tangent_angle(back.total_length()) - leg2.final_alpha();
  CHECK(std::abs(std::remainder(psi2 - psi0, 2 * pi)) < 1e-10);
}

TEST_CASE("error scan") {
  const auto e = ellipse(2.0, 1.0);
  const double T = e.total_length();
  const std::vector<double> bases{0.0, 0.2 * T, 0.45 * T};
  const auto rows = error_scan(e, {4.0, 8.0}, bases);
  REQUIRE(rows.size() == 2 * (bases.size() + 1));
  for (double ell : {4.0, 8.0}) {
    double lo = 1e300, hi = -1e300, centre = 0.0;
    for (const auto& r : rows) {
      if (r.wheelbase != ell) continue;
      if (r.start == PlanimeterStart::centroid) {
        centre = std::abs(r.residual);
        continue;
      }
      lo = std::min(lo, r.residual);
      hi = std::max(hi, r.residual);
    }
    CHECK(hi - lo > 1e-3);
    CHECK(centre < std::min(std::abs(lo), std::abs(hi)));
  }
  const auto one = error_scan(e, {4.0}, {0.2 * T});
  const auto direct = measure(e, 4.0, 0.2 * T, boundary());
  REQUIRE(one.size() == 2);
  CHECK(one[0].start == PlanimeterStart::boundary);
  CHECK(one[0].deflection == doctest::Approx(direct.deflection).epsilon(1e-14));
  CHECK(one[0].residual == doctest::Approx(direct.residual_error).epsilon(1e-14));
}

TEST_CASE("boundary starts on a circle do not depend on the base") {
  const auto rows = error_scan(circle(1.0), {5.0}, {0.0, 1.0, 2.0, 4.0});
  for (const auto& r : rows) {
    if (r.start == PlanimeterStart::boundary) CHECK(r.residual == doctest::Approx(rows[0].residual).epsilon(1e-9));
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(measure(make_segment({0, 0}, {1, 0}), 2.0, 0.0), ValidationError);
  CHECK_THROWS_AS(measure(circle(1.0, {0, 0}, 2), 2.0, 0.0), ValidationError);
  CHECK_THROWS_AS(measure(circle(1.0), -1.0, 0.0), ValidationError);
  CHECK(planimeter_start_from_string("boundary") == PlanimeterStart::boundary);
  CHECK_THROWS_AS(planimeter_start_from_string("middle"), ValidationError);
}
