#include "tractrix/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "paths.hpp"
#include "quadrature.hpp"
#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::circle: return "circle";
    case CurveKind::ellipse: return "ellipse";
    case CurveKind::fourier_support: return "fourier-support";
    case CurveKind::polyline: return "polyline";
    case CurveKind::samples: return "samples";
    case CurveKind::segment: return "segment";
    case CurveKind::geodesic_circle: return "geodesic-circle";
  }
  return "circle";
}

CurveKind curve_kind_from_string(std::string_view name) {
  for (auto k : {CurveKind::circle, CurveKind::ellipse, CurveKind::fourier_support,
                 CurveKind::polyline, CurveKind::samples, CurveKind::segment,
                 CurveKind::geodesic_circle}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown curve kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// FrontTrack

FrontTrack::FrontTrack(std::shared_ptr<const CurvePath> path, int traversals, int orientation,
                       Geometry geometry)
    : path_(std::move(path)), geometry_(geometry) {
  if (!path_) throw ValidationError("null curve path");
  if (traversals < 1) throw ValidationError("traversals must be >= 1");
  if (orientation != 1 && orientation != -1) throw ValidationError("orientation must be +1 or -1");
  const double l0 = path_->length();
  if (!(l0 > 0.0)) throw ValidationError("curve has zero length");
  closed_ = path_->closed();
  if (!closed_ && traversals != 1) throw ValidationError("open curves are traversed once");
  passes_ = traversals;
  length_ = l0 * traversals;
  if (closed_) {
    turning_ = static_cast<int>(
        std::lround((path_->tangent_angle(l0) - path_->tangent_angle(0.0)) / (2.0 * pi)));
  }
  if (orientation < 0) {
    start_ = length_;
    direction_ = -1.0;
  }
}

double FrontTrack::base_parameter(double t) const { return start_ + direction_ * t; }

namespace {

struct Reduced {
  double s;
  double winds;
};

Reduced reduce(double u, double l0, bool closed) {
  if (!closed) return {std::clamp(u, 0.0, l0), 0.0};
  double m = std::floor(u / l0);
  double s = u - m * l0;
  if (s >= l0) {
    s -= l0;
    m += 1.0;
  }
  return {s, m};
}

}  // namespace

Vec2 FrontTrack::position(double t) const {
  const auto r = reduce(base_parameter(t), path_->length(), path_->closed());
  return path_->position(r.s);
}

double FrontTrack::tangent_angle(double t) const {
  const auto r = reduce(base_parameter(t), path_->length(), path_->closed());
  double a = path_->tangent_angle(r.s) + 2.0 * pi * turning_ * r.winds;
  if (direction_ < 0.0) a += pi;
  return a;
}

double FrontTrack::curvature(double t) const {
  const auto r = reduce(base_parameter(t), path_->length(), path_->closed());
  return direction_ * path_->curvature(r.s);
}

std::vector<double> FrontTrack::breakpoints() const {
  const auto base = path_->breakpoints();
  if (base.empty()) return {};
  const double l0 = path_->length();
  const double tol = 1e-12 * length_;
  std::vector<double> out;
  const int lo = static_cast<int>(std::floor(std::min(start_, start_ + direction_ * length_) / l0)) - 1;
  const int hi = static_cast<int>(std::ceil(std::max(start_, start_ + direction_ * length_) / l0)) + 1;
  for (int m = lo; m <= hi; ++m) {
    for (double b : base) {
      const double u = path_->closed() ? b + m * l0 : b;
      const double t = (u - start_) * direction_;
      if (t > tol && t < length_ - tol) out.push_back(t);
    }
    if (!path_->closed()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [tol](double a, double b) { return b - a <= tol; }),
            out.end());
  return out;
}

double FrontTrack::min_curvature() const {
  const double span = closed_ ? std::min(length_, pass_length()) : length_;
  double k = curvature(0.0);
  constexpr int n = 4096;
  for (int i = 1; i <= n; ++i) k = std::min(k, curvature(span * i / n));
  for (double b : breakpoints()) {
    if (b < span) k = std::min({k, curvature(b), curvature(std::nextafter(b, 0.0))});
  }
  return k;
}

double FrontTrack::max_curvature() const {
  const double span = closed_ ? std::min(length_, pass_length()) : length_;
  double k = curvature(0.0);
  constexpr int n = 4096;
  for (int i = 1; i <= n; ++i) k = std::max(k, curvature(span * i / n));
  for (double b : breakpoints()) {
    if (b < span) k = std::max({k, curvature(b), curvature(std::nextafter(b, 0.0))});
  }
  return k;
}

bool FrontTrack::convex() const { return closed_ && min_curvature() > 0.0; }

FrontTrack FrontTrack::reversed() const {
  FrontTrack r = *this;
  r.start_ = base_parameter(length_);
  r.direction_ = -direction_;
  return r;
}

FrontTrack FrontTrack::rebased(double t0) const {
  if (!closed_) throw ValidationError("only closed tracks can be rebased");
  FrontTrack r = *this;
  r.start_ = base_parameter(t0);
  return r;
}

FrontTrack FrontTrack::slice(double t0, double t1) const {
  if (!(t1 > t0) || t0 < 0.0 || t1 > length_ * (1.0 + 1e-14)) {
    throw ValidationError("slice bounds outside the track");
  }
  FrontTrack r = *this;
  r.start_ = base_parameter(t0);
  r.length_ = t1 - t0;
  r.closed_ = false;
  return r;
}

FrontTrack FrontTrack::with_geometry(Geometry g) const {
  FrontTrack r = *this;
  r.geometry_ = g;
  return r;
}

// ---------------------------------------------------------------------------
// make_curve

namespace {

std::shared_ptr<const CurvePath> ellipse_path(const CurveSpec& spec) {
  const double a = spec.semi_major, b = spec.semi_minor;
  if (!(b > 0.0 && a >= b)) throw ValidationError("ellipse needs a >= b > 0");
  const Vec2 c = spec.center;
  const double rot = spec.rotation;
  detail::ParametricCurve pc;
  pc.u_end = 2.0 * pi;
  pc.closed = true;
  pc.point = [=](double u) { return c + rotate({a * std::cos(u), b * std::sin(u)}, rot); };
  pc.d1 = [=](double u) { return rotate({-a * std::sin(u), b * std::cos(u)}, rot); };
  pc.d2 = [=](double u) { return rotate({-a * std::cos(u), -b * std::sin(u)}, rot); };
  return std::make_shared<detail::ArcLengthPath>(std::move(pc));
}

struct Fourier {
  std::vector<double> c, s;

  /// Returns p^(order)(phi).
  double eval(double phi, int order) const {
    double v = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      const double np = static_cast<double>(n);
      const double cn = std::cos(n * phi), sn = std::sin(n * phi);
      switch (order) {
        case 0: v += c[n] * cn + s[n] * sn; break;
        case 1: v += np * (-c[n] * sn + s[n] * cn); break;
        case 2: v += -np * np * (c[n] * cn + s[n] * sn); break;
        default: v += np * np * np * (c[n] * sn - s[n] * cn); break;
      }
    }
    return v;
  }
};

Fourier normalized_fourier(std::vector<double> c, std::vector<double> s) {
  const std::size_t n = std::max<std::size_t>({c.size(), s.size(), 1});
  c.resize(n, 0.0);
  s.resize(n, 0.0);
  s[0] = 0.0;
  return {std::move(c), std::move(s)};
}

std::shared_ptr<const CurvePath> fourier_support_path(const CurveSpec& spec) {
  auto f = normalized_fourier(spec.cos_coeffs, spec.sin_coeffs);
  constexpr int grid = 4096;
  for (int i = 0; i < grid; ++i) {
    const double phi = 2.0 * pi * i / grid;
    if (!(f.eval(phi, 0) + f.eval(phi, 2) > 0.0)) {
      throw ValidationError("fourier-support spec is not strictly convex (p + p'' <= 0)");
    }
  }
  const Vec2 c = spec.center;
  const double rot = spec.rotation;
  detail::ParametricCurve pc;
  pc.u_end = 2.0 * pi;
  pc.closed = true;
  pc.point = [=](double phi) {
    const Vec2 n = unit(phi);
    return c + rotate(f.eval(phi, 0) * n + f.eval(phi, 1) * perp(n), rot);
  };
  pc.d1 = [=](double phi) {
    const double rho = f.eval(phi, 0) + f.eval(phi, 2);
    return rotate(rho * perp(unit(phi)), rot);
  };
  pc.d2 = [=](double phi) {
    const Vec2 n = unit(phi);
    const double rho = f.eval(phi, 0) + f.eval(phi, 2);
    const double drho = f.eval(phi, 1) + f.eval(phi, 3);
    return rotate(drho * perp(n) - rho * n, rot);
  };
  return std::make_shared<detail::ArcLengthPath>(std::move(pc));
}

double vertex_diameter(const std::vector<Vec2>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, norm(pts[i] - pts[j]));
  }
  return d;
}

std::shared_ptr<const CurvePath> polyline_path(const CurveSpec& spec) {
  const auto& v = spec.points;
  if (v.size() < 3) throw ValidationError("polyline needs at least 3 vertices");
  bool collinear = true;
  for (std::size_t i = 2; i < v.size() && collinear; ++i) {
    const Vec2 a = v[1] - v[0], b = v[i] - v[0];
    if (std::abs(cross(a, b)) > 1e-12 * norm(a) * norm(b)) collinear = false;
  }
  if (collinear) throw ValidationError("polyline vertices are collinear");
  std::vector<Vec2> verts = v;
  if (spec.closed && norm(verts.front() - verts.back()) == 0.0) verts.pop_back();
  const double fillet =
      spec.fillet_radius > 0.0 ? spec.fillet_radius : 1e-3 * vertex_diameter(verts);
  return detail::make_filleted_polyline(verts, spec.closed, fillet);
}

}  // namespace

FrontTrack make_curve(const CurveSpec& spec) {
  if (spec.geometry != Geometry::euclidean && spec.kind != CurveKind::geodesic_circle) {
    throw ValidationError("non-Euclidean tracks are given as geodesic circles");
  }
  std::shared_ptr<const CurvePath> path;
  switch (spec.kind) {
    case CurveKind::circle:
      if (!(spec.radius > 0.0)) throw ValidationError("circle needs r > 0");
      path = std::make_shared<detail::CirclePath>(spec.center, spec.radius, spec.rotation);
      break;
    case CurveKind::ellipse:
      path = ellipse_path(spec);
      break;
    case CurveKind::fourier_support:
      path = fourier_support_path(spec);
      break;
    case CurveKind::polyline:
      path = polyline_path(spec);
      break;
    case CurveKind::samples:
      path = detail::make_spline_path(spec.points, spec.closed);
      break;
    case CurveKind::segment:
      if (spec.points.size() != 2) throw ValidationError("segment needs exactly two points");
      return make_segment(spec.points[0], spec.points[1]);
    case CurveKind::geodesic_circle:
      path = std::make_shared<detail::GeodesicCirclePath>(spec.geometry, spec.radius);
      break;
  }
  return FrontTrack(std::move(path), spec.traversals, spec.orientation, spec.geometry);
}

FrontTrack make_segment(Vec2 from, Vec2 to) {
  const Vec2 d = to - from;
  const double len = norm(d);
  if (!(len > 0.0)) throw ValidationError("segment endpoints coincide");
  std::vector<detail::PiecewisePath::Piece> piece{{from, std::atan2(d.y, d.x), 0.0, len}};
  return FrontTrack(std::make_shared<detail::PiecewisePath>(std::move(piece), false));
}

// ---------------------------------------------------------------------------
// Areas and moments

namespace {

/// Integrates f(t) over [0, T] with composite Gauss-Legendre panels that
/// respect curvature breakpoints.
template <class F>
auto integrate_along(const FrontTrack& track, F&& f) {
  std::vector<double> cuts{0.0};
  for (double b : track.breakpoints()) cuts.push_back(b);
  cuts.push_back(track.total_length());
  const double max_panel = track.pass_length() / 512.0;
  const auto& gl = detail::GL10::instance();
  decltype(f(0.0)) acc{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const int m = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    const double h = (b - a) / m;
    for (int j = 0; j < m; ++j) acc += gl.integrate(f, a + j * h, a + (j + 1) * h);
  }
  return acc;
}

struct Moments5 {
  std::array<double, 5> v{};
  Moments5& operator+=(const Moments5& o) {
    for (int i = 0; i < 5; ++i) v[i] += o.v[i];
    return *this;
  }
  Moments5 operator*(double w) const {
    Moments5 r = *this;
    for (auto& x : r.v) x *= w;
    return r;
  }
};

void require_closed_euclidean(const FrontTrack& track, const char* what) {
  if (!track.closed()) throw ValidationError(std::string(what) + " needs a closed track");
  if (track.geometry() != Geometry::euclidean) {
    throw ValidationError(std::string(what) + " is defined for Euclidean tracks");
  }
}

}  // namespace

AreaMoments area_moments(const FrontTrack& track) {
  require_closed_euclidean(track, "area_moments");
  const Vec2 ref = track.position(0.0);
  const Moments5 m = integrate_along(track, [&](double t) {
    const Vec2 q = track.position(t) - ref;
    const double th = track.tangent_angle(t);
    const double dx = std::cos(th), dy = std::sin(th);
    Moments5 r;
    r.v = {0.5 * (q.x * dy - q.y * dx), 0.5 * q.x * q.x * dy, -0.5 * q.y * q.y * dx,
           q.x * q.x * q.x * dy / 3.0, -q.y * q.y * q.y * dx / 3.0};
    return r;
  });
  AreaMoments out;
  out.area = m.v[0];
  if (out.area == 0.0) {
    out.centroid = ref;
    return out;
  }
  const Vec2 c{m.v[1] / out.area, m.v[2] / out.area};
  out.centroid = ref + c;
  out.mean_square_radius = (m.v[3] + m.v[4]) / out.area - dot(c, c);
  return out;
}

double enclosed_area(const FrontTrack& track) {
  require_closed_euclidean(track, "enclosed_area");
  const Vec2 ref = track.position(0.0);
  return integrate_along(track, [&](double t) {
    const Vec2 q = track.position(t) - ref;
    const double th = track.tangent_angle(t);
    return 0.5 * (q.x * std::sin(th) - q.y * std::cos(th));
  });
}

std::vector<Vec2> sample_positions(const FrontTrack& track, int count) {
  std::vector<Vec2> pts(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) pts[i] = track.position(track.total_length() * i / count);
  return pts;
}

double diameter(const FrontTrack& track) {
  const auto pts = sample_positions(track, 512);
  return vertex_diameter(pts);
}

bool is_simple(const FrontTrack& track) {
  if (!track.closed() || track.total_length() > track.pass_length() * (1.0 + 1e-12)) return false;
  if (std::abs(track.turning_number()) != 1) return false;
  constexpr int n = 1024;
  const auto p = sample_positions(track, n);
  const auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Vec2 a = p[i], b = p[i + 1], c = p[j], d = p[j + 1];
      const double o1 = orient(a, b, c), o2 = orient(a, b, d);
      const double o3 = orient(c, d, a), o4 = orient(c, d, b);
      if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
          o4 != 0) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Support functions

SupportFunction::SupportFunction(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                                 Vec2 origin)
    : origin_(origin) {
  auto f = normalized_fourier(std::move(cos_coeffs), std::move(sin_coeffs));
  cos_ = std::move(f.c);
  sin_ = std::move(f.s);
}

double SupportFunction::value(double phi) const { return Fourier{cos_, sin_}.eval(phi, 0); }
double SupportFunction::derivative(double phi) const { return Fourier{cos_, sin_}.eval(phi, 1); }
double SupportFunction::second_derivative(double phi) const {
  return Fourier{cos_, sin_}.eval(phi, 2);
}

Vec2 SupportFunction::envelope(double phi) const {
  const Vec2 n = unit(phi);
  return origin_ + value(phi) * n + derivative(phi) * perp(n);
}

SupportFunction SupportFunction::shifted(double t) const {
  SupportFunction r = *this;
  r.cos_[0] -= t;
  for (auto& s : r.samples_) s -= t;
  return r;
}

SupportFunction support_function(const FrontTrack& track, std::optional<Vec2> origin, int order,
                                 int grid) {
  require_closed_euclidean(track, "support_function");
  if (order < 0 || grid < 2 * order + 2) throw ValidationError("support grid too coarse");
  if (!track.convex()) throw ValidationError("support function needs a strictly convex track");
  const Vec2 o = origin ? *origin : area_moments(track).centroid;

  // Tangent angle is strictly increasing over one pass; tabulate and invert.
  const double span = track.pass_length();
  constexpr int table = 4096;
  std::vector<double> tt(table + 1), th(table + 1);
  for (int j = 0; j <= table; ++j) {
    tt[j] = span * j / table;
    th[j] = track.tangent_angle(tt[j]);
  }
  const double th0 = th[0];

  std::vector<double> samples(grid);
  for (int i = 0; i < grid; ++i) {
    const double phi = 2.0 * pi * i / grid;
    double target = phi + 0.5 * pi - th0;
    target = th0 + (target - 2.0 * pi * std::floor(target / (2.0 * pi)));
    auto it = std::upper_bound(th.begin(), th.end(), target);
    int j = std::clamp(static_cast<int>(it - th.begin()) - 1, 0, table - 1);
    double lo = tt[j], hi = tt[j + 1];
    double t = lo + (hi - lo) * (target - th[j]) / (th[j + 1] - th[j]);
    for (int k = 0; k < 50; ++k) {
      const double f = track.tangent_angle(t) - target;
      if (f > 0.0) hi = t;
      else lo = t;
      double next = t - f / track.curvature(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-15 * span) {
        t = next;
        break;
      }
      t = next;
    }
    samples[i] = dot(track.position(t) - o, unit(phi));
  }

  std::vector<double> c(order + 1, 0.0), s(order + 1, 0.0);
  for (int n = 0; n <= order; ++n) {
    double ac = 0.0, as = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double a = 2.0 * pi * static_cast<double>(n) * i / grid;
      ac += samples[i] * std::cos(a);
      as += samples[i] * std::sin(a);
    }
    const double w = (n == 0 ? 1.0 : 2.0) / grid;
    c[n] = ac * w;
    s[n] = as * w;
  }
  SupportFunction p(std::move(c), std::move(s), o);
  p.set_samples(std::move(samples));
  return p;
}

LengthArea support_length_area(const SupportFunction& p) {
  const auto& c = p.cos_coeffs();
  const auto& s = p.sin_coeffs();
  LengthArea r;
  r.length = 2.0 * pi * c[0];
  double a = 2.0 * pi * c[0] * c[0];
  for (std::size_t n = 1; n < c.size(); ++n) {
    const double nn = static_cast<double>(n);
    a += pi * (c[n] * c[n] + s[n] * s[n]) * (1.0 - nn * nn);
  }
  r.area = 0.5 * a;
  return r;
}

SupportFunction wavefront(const SupportFunction& p, double t) { return p.shifted(t); }

double isoperimetric_defect(const SupportFunction& p) {
  const auto la = support_length_area(p);
  return la.length * la.length - 4.0 * pi * la.area;
}

}  // namespace tractrix
