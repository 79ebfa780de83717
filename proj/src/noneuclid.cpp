#include "tractrix/noneuclid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grid.hpp"
#include "quadrature.hpp"
#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

double minkowski(const Vec3& a, const Vec3& b) { return a[0] * b[0] - a[1] * b[1] - a[2] * b[2]; }

namespace {

Vec3 axpy(const Vec3& x, double s, const Vec3& y) {
  return {x[0] + s * y[0], x[1] + s * y[1], x[2] + s * y[2]};
}

double euclid_dist(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

struct Frame {
  Vec3 p, t, n;
};

Frame derivative(const Frame& f, double k) {
  return {f.t, axpy(f.p, k, f.n), axpy(Vec3{0, 0, 0}, -k, f.t)};
}

Frame step_frame(const Frame& f, double h, const Frame& d) {
  return {axpy(f.p, h, d.p), axpy(f.t, h, d.t), axpy(f.n, h, d.n)};
}

void orthonormalize(Frame& f) {
  const auto scale = [](Vec3 v, double s) { return Vec3{v[0] * s, v[1] * s, v[2] * s}; };
  f.p = scale(f.p, 1.0 / std::sqrt(minkowski(f.p, f.p)));
  f.t = axpy(f.t, -minkowski(f.t, f.p), f.p);
  f.t = scale(f.t, 1.0 / std::sqrt(-minkowski(f.t, f.t)));
  f.n = axpy(f.n, -minkowski(f.n, f.p), f.p);
  f.n = axpy(f.n, minkowski(f.n, f.t), f.t);
  f.n = scale(f.n, 1.0 / std::sqrt(-minkowski(f.n, f.n)));
}

}  // namespace

double HCurve::point_gap() const { return euclid_dist(points.front(), points.back()); }

double HCurve::frame_gap() const {
  return std::max(euclid_dist(tangents.front(), tangents.back()),
                  euclid_dist(normals.front(), normals.back()));
}

double HCurve::frame_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 &p = points[i], &t = tangents[i], &n = normals[i];
    worst = std::max({worst, std::abs(minkowski(p, p) - 1.0), std::abs(minkowski(t, t) + 1.0),
                      std::abs(minkowski(n, n) + 1.0), std::abs(minkowski(p, t)),
                      std::abs(minkowski(p, n)), std::abs(minkowski(t, n))});
  }
  return worst;
}

namespace {

/// RK4 on the Frenet system over the nodes `t`, with three curvature samples
/// (start, middle, end) per step.
HCurve develop_on_grid(std::vector<double> t, const std::vector<double>& k) {
  HCurve c;
  const std::size_t n = t.size();
  c.curvature.resize(n);
  c.points.resize(n);
  c.tangents.resize(n);
  c.normals.resize(n);
  Frame f{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (std::size_t i = 0;; ++i) {
    c.curvature[i] = i + 1 < n ? k[3 * i] : k[3 * i - 1];
    c.points[i] = f.p;
    c.tangents[i] = f.t;
    c.normals[i] = f.n;
    if (i + 1 == n) break;
    const double h = t[i + 1] - t[i];
    const Frame d1 = derivative(f, k[3 * i]);
    const Frame d2 = derivative(step_frame(f, 0.5 * h, d1), k[3 * i + 1]);
    const Frame d3 = derivative(step_frame(f, 0.5 * h, d2), k[3 * i + 1]);
    const Frame d4 = derivative(step_frame(f, h, d3), k[3 * i + 2]);
    Frame next = f;
    for (int j = 0; j < 3; ++j) {
      next.p[j] += h * (d1.p[j] + 2.0 * d2.p[j] + 2.0 * d3.p[j] + d4.p[j]) / 6.0;
      next.t[j] += h * (d1.t[j] + 2.0 * d2.t[j] + 2.0 * d3.t[j] + d4.t[j]) / 6.0;
      next.n[j] += h * (d1.n[j] + 2.0 * d2.n[j] + 2.0 * d3.n[j] + d4.n[j]) / 6.0;
    }
    orthonormalize(next);
    for (const auto& v : {next.p, next.t, next.n}) {
      for (double x : v) {
        if (!std::isfinite(x) || std::abs(x) > 1e12) {
          throw NumericalError("development left the accurately representable region of H^2");
        }
      }
    }
    f = next;
  }
  c.t = std::move(t);
  return c;
}

}  // namespace

HCurve develop_hyperbolic(const std::function<double(double)>& k, double length, int steps) {
  if (!(length > 0.0)) throw ValidationError("development length must be positive");
  if (steps < 1) throw ValidationError("development needs at least one step");
  const double h = length / steps;
  std::vector<double> t(static_cast<std::size_t>(steps) + 1), ks;
  ks.reserve(3 * static_cast<std::size_t>(steps));
  for (int i = 0; i <= steps; ++i) t[i] = i == steps ? length : h * i;
  double k0 = k(0.0);
  for (int i = 0; i < steps; ++i) {
    const double k1 = k(t[i + 1]);
    ks.insert(ks.end(), {k0, k(t[i] + 0.5 * h), k1});
    k0 = k1;
  }
  return develop_on_grid(std::move(t), ks);
}

HCurve develop_hyperbolic(const FrontTrack& track, int steps_per_pass) {
  if (steps_per_pass < 1) throw ValidationError("steps per pass must be positive");
  auto g = detail::make_step_grid(track, 0.0, track.total_length(), track.pass_length() / steps_per_pass);
  return develop_on_grid(std::move(g.t), g.k);
}

Vec2 poincare(const Vec3& p) { return {p[1] / (1.0 + p[0]), p[2] / (1.0 + p[0])}; }

Vec3 ideal_point(double phi) { return {1.0, std::cos(phi), std::sin(phi)}; }

std::vector<double> stargazing_angle(const HCurve& curve, const Vec3& star) {
  if (!(star[0] > 0.0) || !std::isfinite(star[0])) {
    throw ValidationError("ideal point must have x0 > 0");
  }
  const Vec3 a{1.0, star[1] / star[0], star[2] / star[0]};
  if (std::abs(minkowski(a, a)) > 1e-9) throw ValidationError("ideal point must be a null vector");
  std::vector<double> out(curve.points.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3& p = curve.points[i];
    const Vec3 d = axpy(a, -minkowski(a, p), p);
    const double dt = -minkowski(d, curve.tangents[i]);
    const double dn = -minkowski(d, curve.normals[i]);
    double alpha = pi - std::atan2(dn, dt);
    if (i > 0) alpha = out[i - 1] + std::remainder(alpha - out[i - 1], 2.0 * pi);
    out[i] = alpha;
  }
  return out;
}

double geodesic_area(const FrontTrack& track) {
  if (!track.closed()) throw ValidationError("area needs a closed track");
  if (track.total_length() > track.pass_length() * (1.0 + 1e-12)) {
    throw ValidationError("area needs a single traversal");
  }
  const double total = track.total_length();
  std::vector<double> cuts{0.0};
  for (double b : track.breakpoints()) cuts.push_back(b);
  cuts.push_back(total);
  double turn = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int panels = std::max(1, static_cast<int>(std::ceil(512.0 * (cuts[i + 1] - cuts[i]) / total)));
    const double w = (cuts[i + 1] - cuts[i]) / panels;
    for (int j = 0; j < panels; ++j) {
      turn += detail::GL10::instance().integrate([&](double t) { return track.curvature(t); },
                                                 cuts[i] + j * w, cuts[i] + (j + 1) * w);
    }
  }
  switch (track.geometry()) {
    case Geometry::spherical: return 2.0 * pi - turn;
    case Geometry::hyperbolic: return turn - 2.0 * pi;
    case Geometry::euclidean: break;
  }
  throw ValidationError("Gauss-Bonnet area applies to curved geometries only");
}

HpzReport hpz_verify(const FrontTrack& track, double wheelbase, int steps_per_pass) {
  HpzReport r;
  r.geometry = track.geometry();
  r.wheelbase = wheelbase;
  (void)steering_coefficient(r.geometry, wheelbase);
  r.area = geodesic_area(track);
  const double kmin = track.min_curvature();
  if (r.geometry == Geometry::spherical) {
    r.threshold = 2.0 * pi * (1.0 - std::cos(wheelbase));
    r.convex = kmin > 0.0;
    if (!r.convex) r.reason = "not geodesically convex (k <= 0)";
  } else {
    r.threshold = 2.0 * pi * (std::cosh(wheelbase) - 1.0);
    r.convex = kmin > 1.0;
    if (!r.convex) r.reason = "not horocyclically convex (k <= 1)";
  }
  if (r.convex && !(r.area > r.threshold)) r.reason = "area does not exceed the threshold";
  r.applicable = r.reason.empty();

  BikeParams p;
  p.wheelbase = wheelbase;
  p.geometry = r.geometry;
  p.steps_per_pass = steps_per_pass;
  const auto m = monodromy(track, p);
  r.trace = std::abs(m.trace);
  r.cls = m.cls;
  r.identity = m.identity;
  r.passed = !r.applicable || (!m.identity && m.cls == MonodromyClass::hyperbolic);
  return r;
}

}  // namespace tractrix
