#include "paths.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "tractrix/error.hpp"

namespace tractrix::detail {

using std::numbers::pi;

namespace {

double nearest_branch(double raw, double reference) {
  return raw + 2.0 * pi * std::round((reference - raw) / (2.0 * pi));
}

}  // namespace

// ---------------------------------------------------------------------------
// ArcLengthPath

ArcLengthPath::ArcLengthPath(ParametricCurve curve, int panels) : curve_(std::move(curve)) {
  du_ = curve_.u_end / panels;
  cumulative_.resize(panels + 1, 0.0);
  node_angle_.resize(panels + 1, 0.0);
  const auto& gl = GL10::instance();
  const auto speed = [this](double u) { return norm(curve_.d1(u)); };
  for (int i = 0; i < panels; ++i) {
    cumulative_[i + 1] = cumulative_[i] + gl.integrate(speed, i * du_, (i + 1) * du_);
  }
  Vec2 d = curve_.d1(0.0);
  node_angle_[0] = std::atan2(d.y, d.x);
  for (int i = 1; i <= panels; ++i) {
    // Track the heading through the panel at a few interior points so that a
    // sharp turn inside one panel still unwraps correctly.
    double ref = node_angle_[i - 1];
    for (int j = 1; j <= 4; ++j) {
      d = curve_.d1((i - 1 + 0.25 * j) * du_);
      ref = nearest_branch(std::atan2(d.y, d.x), ref);
    }
    node_angle_[i] = ref;
  }
  length_ = cumulative_.back();
}

std::vector<double> ArcLengthPath::breakpoints() const {
  std::vector<double> out;
  out.reserve(curve_.knots.size());
  for (double u : curve_.knots) out.push_back(arc_length_to(u));
  return out;
}

int ArcLengthPath::panel_of(double u) const {
  const int last = static_cast<int>(cumulative_.size()) - 2;
  return std::clamp(static_cast<int>(std::floor(u / du_)), 0, last);
}

double ArcLengthPath::arc_length_to(double u) const {
  const int i = panel_of(u);
  const double u0 = i * du_;
  if (u == u0) return cumulative_[i];
  const auto speed = [this](double v) { return norm(curve_.d1(v)); };
  return cumulative_[i] + GL10::instance().integrate(speed, u0, u);
}

double ArcLengthPath::parameter(double s) const {
  s = std::clamp(s, 0.0, length_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  int i = std::clamp(static_cast<int>(it - cumulative_.begin()) - 1, 0,
                     static_cast<int>(cumulative_.size()) - 2);
  double lo = i * du_, hi = (i + 1) * du_;
  const double span = cumulative_[i + 1] - cumulative_[i];
  double u = span > 0.0 ? lo + du_ * (s - cumulative_[i]) / span : lo;
  for (int it_n = 0; it_n < 60; ++it_n) {
    const double f = arc_length_to(u) - s;
    if (f > 0.0) hi = std::min(hi, u);
    else lo = std::max(lo, u);
    const double step = f / norm(curve_.d1(u));
    // Newton converges quadratically, so once the step is this small u is
    // exact to rounding. Tested before the bracket, which a converged step
    // may touch.
    if (std::abs(step) < 1e-13 * (1.0 + curve_.u_end)) return std::clamp(u - step, lo, hi);
    double next = u - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return u;
}

Vec2 ArcLengthPath::position(double s) const { return curve_.point(parameter(s)); }

double ArcLengthPath::tangent_angle(double s) const {
  const double u = parameter(s);
  const Vec2 d = curve_.d1(u);
  const int i = panel_of(u);
  const double frac = (u - i * du_) / du_;
  const double ref = node_angle_[i] + frac * (node_angle_[i + 1] - node_angle_[i]);
  return nearest_branch(std::atan2(d.y, d.x), ref);
}

double ArcLengthPath::curvature(double s) const {
  const double u = parameter(s);
  const Vec2 a = curve_.d1(u), b = curve_.d2(u);
  const double sp = norm(a);
  return cross(a, b) / (sp * sp * sp);
}

// ---------------------------------------------------------------------------
// Circles

double CirclePath::length() const { return 2.0 * pi * radius_; }

Vec2 CirclePath::position(double s) const {
  return center_ + radius_ * unit(start_ + s / radius_);
}

double CirclePath::tangent_angle(double s) const { return start_ + s / radius_ + 0.5 * pi; }

GeodesicCirclePath::GeodesicCirclePath(Geometry g, double radius) : radius_(radius) {
  switch (g) {
    case Geometry::spherical:
      if (!(radius > 0.0 && radius < pi)) {
        throw ValidationError("geodesic circle on the sphere needs 0 < radius < pi");
      }
      scale_ = std::sin(radius);
      curvature_ = std::cos(radius) / std::sin(radius);
      break;
    case Geometry::hyperbolic:
      if (!(radius > 0.0)) throw ValidationError("geodesic circle needs radius > 0");
      scale_ = std::sinh(radius);
      curvature_ = 1.0 / std::tanh(radius);
      break;
    case Geometry::euclidean:
      if (!(radius > 0.0)) throw ValidationError("circle needs radius > 0");
      scale_ = radius;
      curvature_ = 1.0 / radius;
      break;
  }
}

Vec2 GeodesicCirclePath::position(double s) const { return radius_ * unit(s / scale_); }

double GeodesicCirclePath::tangent_angle(double s) const { return s / scale_ + 0.5 * pi; }

// ---------------------------------------------------------------------------
// PiecewisePath

PiecewisePath::PiecewisePath(std::vector<Piece> pieces, bool closed)
    : pieces_(std::move(pieces)), closed_(closed) {
  starts_.reserve(pieces_.size() + 1);
  starts_.push_back(0.0);
  for (const auto& p : pieces_) starts_.push_back(starts_.back() + p.length);
}

std::size_t PiecewisePath::locate(double s) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), s);
  const auto i = static_cast<std::ptrdiff_t>(it - starts_.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, pieces_.size() - 1));
}

Vec2 PiecewisePath::position(double s) const {
  const std::size_t i = locate(s);
  const Piece& p = pieces_[i];
  const double sigma = s - starts_[i];
  const Vec2 u = unit(p.heading);
  const double kappa = p.curvature;
  if (kappa == 0.0) return p.start + sigma * u;
  const double a = kappa * sigma;
  return p.start + (std::sin(a) / kappa) * u + ((1.0 - std::cos(a)) / kappa) * perp(u);
}

double PiecewisePath::tangent_angle(double s) const {
  const std::size_t i = locate(s);
  return pieces_[i].heading + pieces_[i].curvature * (s - starts_[i]);
}

double PiecewisePath::curvature(double s) const { return pieces_[locate(s)].curvature; }

std::vector<double> PiecewisePath::breakpoints() const {
  // The seam of a closed chain is a junction like any other.
  return {starts_.begin() + (closed_ ? 0 : 1), starts_.end() - 1};
}

std::shared_ptr<const CurvePath> make_filleted_polyline(const std::vector<Vec2>& vertices,
                                                        bool closed, double fillet_radius) {
  const std::size_t n = vertices.size();
  if (n < 2) throw ValidationError("polyline needs at least two vertices");
  const std::size_t edges = closed ? n : n - 1;
  std::vector<Vec2> dir(edges);
  std::vector<double> len(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2 e = vertices[(i + 1) % n] - vertices[i];
    len[i] = norm(e);
    if (len[i] == 0.0) throw ValidationError("polyline has repeated vertices");
    dir[i] = e / len[i];
  }
  // Turn at vertex i between edge i-1 and edge i; open ends have no turn.
  std::vector<double> turn(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!closed && (i == 0 || i == n - 1)) continue;
    const Vec2 a = dir[(i + edges - 1) % edges], b = dir[i % edges];
    turn[i] = std::atan2(cross(a, b), dot(a, b));
    if (std::abs(turn[i]) > pi - 1e-9) throw ValidationError("polyline reverses direction");
  }
  std::vector<double> tangent(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tangent[i] = fillet_radius * std::tan(0.5 * std::abs(turn[i]));

  std::vector<PiecewisePath::Piece> pieces;
  double heading = std::atan2(dir[0].y, dir[0].x);
  for (std::size_t i = 0; i < edges; ++i) {
    const std::size_t j = (i + 1) % n;
    const double straight = len[i] - tangent[i] - tangent[j];
    if (straight < 0.0) throw ValidationError("fillet radius too large for polyline edge");
    const Vec2 start = vertices[i] + tangent[i] * dir[i];
    if (straight > 0.0) pieces.push_back({start, heading, 0.0, straight});
    if (turn[j] != 0.0 && (closed || j != n - 1)) {
      const double kappa = (turn[j] > 0.0 ? 1.0 : -1.0) / fillet_radius;
      pieces.push_back({vertices[j] - tangent[j] * dir[i], heading, kappa,
                        fillet_radius * std::abs(turn[j])});
      heading += turn[j];
    }
  }
  if (pieces.empty()) throw ValidationError("degenerate polyline");
  return std::make_shared<PiecewisePath>(std::move(pieces), closed);
}

// ---------------------------------------------------------------------------
// Cubic spline through samples (GSL).

namespace {

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};
using SplinePtr = std::shared_ptr<gsl_spline>;

SplinePtr build_spline(const std::vector<double>& u, const std::vector<double>& v, bool periodic) {
  const gsl_interp_type* type = periodic ? gsl_interp_cspline_periodic : gsl_interp_cspline;
  SplinePtr s(gsl_spline_alloc(type, u.size()), SplineDeleter{});
  if (!s || gsl_spline_init(s.get(), u.data(), v.data(), u.size()) != GSL_SUCCESS) {
    throw ValidationError("spline construction failed for sampled curve");
  }
  return s;
}

}  // namespace

std::shared_ptr<const CurvePath> make_spline_path(const std::vector<Vec2>& points, bool closed) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;

  std::vector<Vec2> pts = points;
  if (closed && norm(pts.front() - pts.back()) > 0.0) pts.push_back(pts.front());
  const std::size_t need = closed ? 4 : 3;
  if (pts.size() < need) throw ValidationError("sampled curve needs more points");
  std::vector<double> u(pts.size(), 0.0), x(pts.size()), y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = pts[i].x;
    y[i] = pts[i].y;
    if (i > 0) {
      const double h = norm(pts[i] - pts[i - 1]);
      if (h == 0.0) throw ValidationError("sampled curve has repeated points");
      u[i] = u[i - 1] + h;
    }
  }
  auto sx = build_spline(u, x, closed);
  auto sy = build_spline(u, y, closed);
  const double u_end = u.back();
  const auto clamp_u = [u_end](double t) { return std::clamp(t, 0.0, u_end); };
  ParametricCurve c;
  c.u_end = u_end;
  c.closed = closed;
  c.knots.assign(u.begin() + 1, u.end() - 1);
  c.point = [=](double t) {
    t = clamp_u(t);
    return Vec2{gsl_spline_eval(sx.get(), t, nullptr), gsl_spline_eval(sy.get(), t, nullptr)};
  };
  c.d1 = [=](double t) {
    t = clamp_u(t);
    return Vec2{gsl_spline_eval_deriv(sx.get(), t, nullptr),
                gsl_spline_eval_deriv(sy.get(), t, nullptr)};
  };
  c.d2 = [=](double t) {
    t = clamp_u(t);
    return Vec2{gsl_spline_eval_deriv2(sx.get(), t, nullptr),
                gsl_spline_eval_deriv2(sy.get(), t, nullptr)};
  };
  const int panels = std::max<int>(256, 8 * static_cast<int>(pts.size()));
  return std::make_shared<ArcLengthPath>(std::move(c), panels);
}

}  // namespace tractrix::detail
