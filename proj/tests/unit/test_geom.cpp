#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tractrix/error.hpp"
#include "tractrix/geom.hpp"
#include "tractrix/random.hpp"

using namespace tractrix;
using std::numbers::pi;

namespace {

CurveSpec circle(double r, int traversals = 1, int orientation = 1) {
  CurveSpec s;
  s.kind = CurveKind::circle;
  s.radius = r;
  s.traversals = traversals;
  s.orientation = orientation;
  return s;
}

CurveSpec ellipse(double a, double b) {
  CurveSpec s;
  s.kind = CurveKind::ellipse;
  s.semi_major = a;
  s.semi_minor = b;
  return s;
}

CurveSpec fourier(std::vector<double> c, std::vector<double> sn = {}) {
  CurveSpec s;
  s.kind = CurveKind::fourier_support;
  s.cos_coeffs = std::move(c);
  s.sin_coeffs = std::move(sn);
  return s;
}

std::vector<CurveSpec> all_kinds() {
  std::vector<CurveSpec> out{circle(1.3), ellipse(2.0, 1.0), fourier({1.0, 0.2, 0.1, 0.02}, {0.0, 0.1, 0.0, 0.01})};
  CurveSpec poly;
  poly.kind = CurveKind::polyline;
  poly.points = {{0, 0}, {3, 0}, {3, 2}, {0, 2}};
  out.push_back(poly);
  CurveSpec samples;
  samples.kind = CurveKind::samples;
  for (int i = 0; i < 40; ++i) {
    const double phi = 2 * pi * i / 40;
    samples.points.push_back((1.0 + 0.2 * std::cos(3 * phi)) * unit(phi));
  }
  out.push_back(samples);
  CurveSpec seg;
  seg.kind = CurveKind::segment;
  seg.points = {{-1, 2}, {4, 5}};
  out.push_back(seg);
  return out;
}

}  // namespace

TEST_CASE("circle lengths and curvature") {
  const auto c = make_curve(circle(1.0));
  CHECK(c.total_length() == doctest::Approx(2 * pi).epsilon(1e-14));
  for (double t : {0.0, 1.0, 2.5, 6.0}) CHECK(c.curvature(t) == doctest::Approx(1.0));
  const auto twice = make_curve(circle(std::sqrt(3.0) / 2.0, 2));
  CHECK(twice.total_length() == doctest::Approx(2 * pi * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(twice.turning_number() == 2);
}

TEST_CASE("ellipse curvature extremes match b/a^2 and a/b^2") {
  const auto e = make_curve(ellipse(2.0, 1.0));
  CHECK(e.min_curvature() == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(e.max_curvature() == doctest::Approx(2.0).epsilon(1e-6));
  // Independent check: curvature from a discrete turning rate of sampled positions.
  const int n = 20000;
  const auto p = sample_positions(e, n);
  double kmax = 0.0;
  for (int i = 1; i < n; ++i) {
    const Vec2 a = p[i] - p[i - 1], b = p[i + 1] - p[i];
    const double turn = std::atan2(cross(a, b), dot(a, b));
    kmax = std::max(kmax, turn / (0.5 * (norm(a) + norm(b))));
  }
  CHECK(kmax == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("all curve kinds are unit speed") {
  for (const auto& spec : all_kinds()) {
    CAPTURE(to_string(spec.kind));
    const auto tr = make_curve(spec);
    const double T = tr.total_length();
    const double h = 1e-6;
    for (int i = 1; i < 200; ++i) {
      const double t = T * (i + 0.37) / 201.0;
      const double speed = norm(tr.position(t + h) - tr.position(t - h)) / (2 * h);
      CHECK(std::abs(speed - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("closed tracks return to their start and wind once") {
  for (const auto& spec : all_kinds()) {
    const auto tr = make_curve(spec);
    if (!tr.closed()) continue;
    CAPTURE(to_string(spec.kind));
    CHECK(norm(tr.position(tr.total_length()) - tr.position(0.0)) < 1e-9);
    CHECK(tr.tangent_angle(tr.total_length()) - tr.tangent_angle(0.0) ==
          doctest::Approx(2 * pi).epsilon(1e-9));
  }
}

TEST_CASE("convexity follows the sign of curvature") {
  CHECK(make_curve(circle(1.0)).convex());
  CHECK(make_curve(ellipse(3.0, 1.0)).convex());
  CHECK_FALSE(make_curve(circle(1.0, 1, -1)).convex());
  CurveSpec bean;
  bean.kind = CurveKind::samples;
  for (int i = 0; i < 64; ++i) {
    const double phi = 2 * pi * i / 64;
    bean.points.push_back((1.0 + 0.4 * std::cos(2 * phi)) * unit(phi));
  }
  CHECK_FALSE(make_curve(bean).convex());
}

TEST_CASE("enclosed area") {
  CHECK(enclosed_area(make_curve(circle(1.0))) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(enclosed_area(make_curve(circle(1.0, 1, -1))) == doctest::Approx(-pi).epsilon(1e-12));
  CHECK(enclosed_area(make_curve(circle(1.0, 3))) == doctest::Approx(3 * pi).epsilon(1e-12));
  CHECK(enclosed_area(make_curve(ellipse(2.0, 1.0))) == doctest::Approx(2 * pi).epsilon(1e-10));
  CHECK_THROWS_AS(enclosed_area(make_segment({0, 0}, {1, 0})), ValidationError);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(make_curve(circle(0.0)), ValidationError);
  CHECK_THROWS_AS(make_curve(circle(-1.0)), ValidationError);
  CHECK_THROWS_AS(make_curve(ellipse(1.0, 2.0)), ValidationError);
  CHECK_THROWS_AS(make_curve(fourier({1.0, 0.0, 0.5})), ValidationError);
  CurveSpec poly;
  poly.kind = CurveKind::polyline;
  poly.points = {{0, 0}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(make_curve(poly), ValidationError);
  poly.points = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(make_curve(poly), ValidationError);
  auto c = circle(1.0, 0);
  CHECK_THROWS_AS(make_curve(c), ValidationError);
  c = circle(1.0, 1, 2);
  CHECK_THROWS_AS(make_curve(c), ValidationError);
}

TEST_CASE("spherical and hyperbolic geodesic circles") {
  CurveSpec s;
  s.kind = CurveKind::geodesic_circle;
  s.radius = pi / 3;
  s.geometry = Geometry::spherical;
  const auto sph = make_curve(s);
  CHECK(sph.total_length() == doctest::Approx(2 * pi * std::sin(pi / 3)));
  CHECK(sph.curvature(0.3) == doctest::Approx(1.0 / std::tan(pi / 3)));
  s.geometry = Geometry::hyperbolic;
  s.radius = 0.7;
  const auto hyp = make_curve(s);
  CHECK(hyp.total_length() == doctest::Approx(2 * pi * std::sinh(0.7)));
  CHECK(hyp.curvature(0.3) == doctest::Approx(1.0 / std::tanh(0.7)));
  s.geometry = Geometry::euclidean;
  const auto flat = make_curve(s);
  CHECK(flat.total_length() == doctest::Approx(2 * pi * 0.7));
  CHECK(flat.curvature(0.3) == doctest::Approx(1.0 / 0.7));
  s.radius = -1.0;
  CHECK_THROWS_AS(make_curve(s), ValidationError);
}

TEST_CASE("support function of circles and the ellipse") {
  const auto p = support_function(make_curve(circle(1.7)));
  auto shifted = circle(1.5);
  shifted.center = {0.8, 0.0};
  const auto q = support_function(make_curve(shifted), Vec2{0.0, 0.0});
  const auto e = support_function(make_curve(ellipse(2.0, 1.0)));
  for (int i = 0; i < 37; ++i) {
    const double phi = 2 * pi * i / 37.0;
    CHECK(p(phi) == doctest::Approx(1.7).epsilon(1e-9));
    CHECK(q(phi) == doctest::Approx(1.5 + 0.8 * std::cos(phi)).epsilon(1e-9));
    CHECK(std::abs(e(phi) - std::sqrt(4 * std::cos(phi) * std::cos(phi) + std::sin(phi) * std::sin(phi))) <
          1e-6);
  }
  CHECK_THROWS_AS(support_function(make_curve(circle(1.0, 1, -1))), ValidationError);
}

TEST_CASE("support envelope reproduces the curve") {
  for (const auto& spec : {ellipse(2.0, 1.0), fourier({1.0, 0.3, 0.05, 0.03}, {0.0, -0.2, 0.04, 0.0})}) {
    const auto tr = make_curve(spec);
    const auto p = support_function(tr);
    const double d = diameter(tr);
    for (int i = 0; i < 97; ++i) {
      const double t = tr.total_length() * i / 97.0;
      const double phi = tr.tangent_angle(t) - pi / 2;
      CHECK(norm(p.envelope(phi) - tr.position(t)) < 1e-6 * d);
    }
    const auto la = support_length_area(p);
    CHECK(la.area == doctest::Approx(enclosed_area(tr)).epsilon(1e-6));
    CHECK(la.length == doctest::Approx(tr.total_length()).epsilon(1e-6));
  }
}

TEST_CASE("length and area from support coefficients") {
  auto la = support_length_area(SupportFunction({1.0}, {0.0}));
  CHECK(la.length == doctest::Approx(2 * pi));
  CHECK(la.area == doctest::Approx(pi));
  la = support_length_area(SupportFunction({0.0, 1.0}, {0.0, 0.0}));
  CHECK(std::abs(la.length) < 1e-14);
  CHECK(std::abs(la.area) < 1e-14);
  const SupportFunction trefoil({1.0, 0.0, 0.0, 0.3}, {0.0, 0.0, 0.0, 0.0});
  la = support_length_area(trefoil);
  CHECK(la.length == doctest::Approx(2 * pi));
  CHECK(la.area == doctest::Approx(0.64 * pi));
  // Plain quadrature of the defining integrals.
  double area = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * pi * i / n;
    area += 0.5 * (std::pow(trefoil.value(phi), 2) - std::pow(trefoil.derivative(phi), 2)) * 2 * pi / n;
  }
  CHECK(area == doctest::Approx(0.64 * pi).epsilon(1e-12));
}

TEST_CASE("wave fronts") {
  auto la = support_length_area(wavefront(SupportFunction({2.0}, {0.0}), 1.0));
  CHECK(la.length == doctest::Approx(2 * pi));
  CHECK(la.area == doctest::Approx(pi));
  la = support_length_area(wavefront(SupportFunction({1.0}, {0.0}), 1.0));
  CHECK(std::abs(la.length) < 1e-14);
  CHECK(std::abs(la.area) < 1e-14);
  const SupportFunction trefoil({1.0, 0.0, 0.0, 0.3}, {0.0, 0.0, 0.0, 0.0});
  la = support_length_area(wavefront(trefoil, 1.0));
  CHECK(std::abs(la.length) < 1e-14);
  CHECK(la.area == doctest::Approx(-0.36 * pi));
}

TEST_CASE("isoperimetric defect and its invariance under wave fronts") {
  CHECK(std::abs(isoperimetric_defect(SupportFunction({2.5}, {0.0}))) < 1e-12);
  const SupportFunction trefoil({1.0, 0.0, 0.0, 0.3}, {0.0, 0.0, 0.0, 0.0});
  CHECK(isoperimetric_defect(trefoil) == doctest::Approx(1.44 * pi * pi));
  for (double t : {0.1, 0.5, 1.0}) {
    CHECK(std::abs(isoperimetric_defect(wavefront(trefoil, t)) - isoperimetric_defect(trefoil)) < 1e-8);
  }
}

TEST_CASE("zero-mean support functions enclose non-positive area") {
  Rng rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const int order = rng.integer(1, 6);
    std::vector<double> c(order + 1, 0.0), s(order + 1, 0.0);
    for (int n = 1; n <= order; ++n) {
      c[n] = rng.uniform(-1.0, 1.0);
      s[n] = rng.uniform(-1.0, 1.0);
    }
    CHECK(support_length_area(SupportFunction(c, s)).area <= 1e-9);
  }
}

TEST_CASE("reversal, rebasing and slicing") {
  const auto e = make_curve(ellipse(2.0, 1.0));
  const double T = e.total_length();
  const auto r = e.reversed();
  CHECK(norm(r.position(0.3) - e.position(T - 0.3)) < 1e-12);
  CHECK(r.curvature(0.3) == doctest::Approx(-e.curvature(T - 0.3)));
  const auto b = e.rebased(1.0);
  CHECK(norm(b.position(0.5) - e.position(1.5)) < 1e-12);
  CHECK(norm(b.position(T - 0.5) - e.position(0.5)) < 1e-12);
  const auto sl = e.slice(1.0, 2.0);
  CHECK_FALSE(sl.closed());
  CHECK(sl.total_length() == doctest::Approx(1.0));
  CHECK(norm(sl.position(0.25) - e.position(1.25)) < 1e-12);
  CHECK(is_simple(e));
  CHECK_FALSE(is_simple(make_curve(circle(1.0, 2))));
}
