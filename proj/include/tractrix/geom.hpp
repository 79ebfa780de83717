#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "tractrix/geometry.hpp"
#include "tractrix/vec2.hpp"

namespace tractrix {

enum class CurveKind {
  circle,
  ellipse,
  fourier_support,
  polyline,
  samples,
  segment,
  geodesic_circle,
};

std::string_view to_string(CurveKind k);
CurveKind curve_kind_from_string(std::string_view name);

/// Declarative description of a front track. Which fields matter depends on
/// `kind`:
///   circle            radius, center, rotation (angle of the start point)
///   ellipse           semi_major, semi_minor, center, rotation
///   fourier_support   cos_coeffs, sin_coeffs (p = c0 + sum cn cos n phi + sn sin n phi),
///                     center (origin of the support function), rotation
///   polyline          points, closed, fillet_radius (0 selects 1e-3 * diameter)
///   samples           points, closed (interpolated by a cubic spline)
///   segment           points[0] -> points[1]
///   geodesic_circle   radius (geodesic radius), geometry (spherical or hyperbolic)
struct CurveSpec {
  CurveKind kind = CurveKind::circle;
  double radius = 1.0;
  double semi_major = 1.0;
  double semi_minor = 1.0;
  Vec2 center{};
  double rotation = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
  std::vector<Vec2> points;
  bool closed = true;
  double fillet_radius = 0.0;
  Geometry geometry = Geometry::euclidean;
  int traversals = 1;
  int orientation = 1;
};

/// One pass of a curve, parameterized by arc length s in [0, length()].
/// Tangent angle is continuous on the whole interval; for closed paths it
/// advances by 2 pi * turning number over one pass.
class CurvePath {
 public:
  virtual ~CurvePath() = default;
  virtual double length() const = 0;
  virtual bool closed() const = 0;
  virtual Vec2 position(double s) const = 0;
  virtual double tangent_angle(double s) const = 0;
  virtual double curvature(double s) const = 0;
  /// Interior arc-length values where curvature is discontinuous.
  virtual std::vector<double> breakpoints() const { return {}; }
};

/// Unit-speed front track: a CurvePath traversed some number of times, in
/// either direction, from an arbitrary start. Immutable; copies share the
/// underlying path.
class FrontTrack {
 public:
  FrontTrack(std::shared_ptr<const CurvePath> path, int traversals = 1, int orientation = 1,
             Geometry geometry = Geometry::euclidean);

  double total_length() const { return length_; }
  /// Length of a single pass of the underlying path.
  double pass_length() const { return path_->length(); }
  bool closed() const { return closed_; }
  Geometry geometry() const { return geometry_; }
  int turning_number() const { return closed_ ? turning_ * passes_ : 0; }

  Vec2 position(double t) const;
  double tangent_angle(double t) const;
  double curvature(double t) const;
  /// Parameter values in (0, total_length()) where curvature jumps.
  std::vector<double> breakpoints() const;

  /// k(t) > 0 on a dense grid of the first pass (closed tracks only).
  bool convex() const;
  double min_curvature() const;
  double max_curvature() const;

  /// Same curve traversed in the opposite direction.
  FrontTrack reversed() const;
  /// Closed track restarted at parameter t0 (one full track length).
  FrontTrack rebased(double t0) const;
  /// Open piece [t0, t1] of this track.
  FrontTrack slice(double t0, double t1) const;
  /// The same arc-length curvature data tagged with another geometry.
  FrontTrack with_geometry(Geometry g) const;

 private:
  double base_parameter(double t) const;

  std::shared_ptr<const CurvePath> path_;
  Geometry geometry_;
  double start_ = 0.0;
  double direction_ = 1.0;
  double length_ = 0.0;
  int passes_ = 1;
  int turning_ = 0;
  bool closed_ = false;
};

/// Build a front track from a spec. Throws ValidationError when the spec
/// invariants fail (non-positive radius, a < b, non-convex support function,
/// collinear polyline, ...).
FrontTrack make_curve(const CurveSpec& spec);

/// Line segment from `from` to `to`.
FrontTrack make_segment(Vec2 from, Vec2 to);

struct AreaMoments {
  double area = 0.0;           ///< signed, Green's theorem
  Vec2 centroid{};             ///< area centroid
  double mean_square_radius = 0.0;  ///< polar second moment about the centroid / area
};

/// Signed enclosed area of a closed Euclidean track (positive for
/// counterclockwise simple curves, multiplied by the number of passes).
double enclosed_area(const FrontTrack& track);
AreaMoments area_moments(const FrontTrack& track);
/// Dense uniform sampling of positions, `count` intervals (count + 1 points).
std::vector<Vec2> sample_positions(const FrontTrack& track, int count);
/// Largest pairwise distance between sampled points.
double diameter(const FrontTrack& track);
/// Closed, traversed once, and free of self-intersections on a 1024-gon
/// sampling of the curve.
bool is_simple(const FrontTrack& track);

/// Support function p(phi) of a convex curve, stored as a truncated Fourier
/// series about `origin` plus the grid samples it was computed from.
class SupportFunction {
 public:
  static constexpr int kDefaultOrder = 64;
  static constexpr int kDefaultGrid = 4096;

  /// p(phi) = cos_coeffs[0] + sum_{n>=1} cos_coeffs[n] cos(n phi) + sin_coeffs[n] sin(n phi).
  SupportFunction(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                  Vec2 origin = {});

  double operator()(double phi) const { return value(phi); }
  double value(double phi) const;
  double derivative(double phi) const;
  double second_derivative(double phi) const;
  /// Envelope point of the line family, i.e. the curve point with outward normal phi.
  Vec2 envelope(double phi) const;

  int order() const { return static_cast<int>(cos_.size()) - 1; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  Vec2 origin() const { return origin_; }
  const std::vector<double>& samples() const { return samples_; }

  /// p - t, the parallel curve at distance t inward.
  SupportFunction shifted(double t) const;

  void set_samples(std::vector<double> s) { samples_ = std::move(s); }

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
  Vec2 origin_;
  std::vector<double> samples_;
};

/// Support function of a closed strictly convex Euclidean track. The origin
/// defaults to the area centroid. Throws ValidationError for non-convex input.
SupportFunction support_function(const FrontTrack& track, std::optional<Vec2> origin = std::nullopt,
                                 int order = SupportFunction::kDefaultOrder,
                                 int grid = SupportFunction::kDefaultGrid);

struct LengthArea {
  double length = 0.0;
  double area = 0.0;
};

/// L = integral of p, A = 1/2 integral (p^2 - p'^2), signed, from the Fourier
/// coefficients.
LengthArea support_length_area(const SupportFunction& p);
/// Support function of the wave front at time t.
SupportFunction wavefront(const SupportFunction& p, double t);
/// L^2 - 4 pi A.
double isoperimetric_defect(const SupportFunction& p);

}  // namespace tractrix
