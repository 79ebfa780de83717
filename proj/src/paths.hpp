#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "tractrix/geom.hpp"

namespace tractrix::detail {

/// Regular parametric curve u -> point(u), u in [0, u_end], with first and
/// second derivatives.
struct ParametricCurve {
  std::function<Vec2(double)> point;
  std::function<Vec2(double)> d1;
  std::function<Vec2(double)> d2;
  double u_end = 0.0;
  bool closed = false;
  /// Interior parameter values where d2 has a kink (spline knots).
  std::vector<double> knots;
};

/// Arc-length reparameterization of a parametric curve: the cumulative
/// length is tabulated with Gauss-Legendre panels and inverted by Newton.
class ArcLengthPath final : public CurvePath {
 public:
  explicit ArcLengthPath(ParametricCurve curve, int panels = 512);

  double length() const override { return length_; }
  bool closed() const override { return curve_.closed; }
  Vec2 position(double s) const override;
  double tangent_angle(double s) const override;
  double curvature(double s) const override;
  std::vector<double> breakpoints() const override;

  /// Curve parameter at arc length s.
  double parameter(double s) const;

 private:
  double arc_length_to(double u) const;
  int panel_of(double u) const;

  ParametricCurve curve_;
  double du_ = 0.0;
  std::vector<double> cumulative_;
  std::vector<double> node_angle_;
  double length_ = 0.0;
};

class CirclePath final : public CurvePath {
 public:
  CirclePath(Vec2 center, double radius, double start_angle)
      : center_(center), radius_(radius), start_(start_angle) {}
  double length() const override;
  bool closed() const override { return true; }
  Vec2 position(double s) const override;
  double tangent_angle(double s) const override;
  double curvature(double) const override { return 1.0 / radius_; }

 private:
  Vec2 center_;
  double radius_;
  double start_;
};

/// Geodesic circle on the sphere or in the hyperbolic plane, drawn in the
/// azimuthal equidistant chart about its center. Arc length and geodesic
/// curvature are intrinsic; chart positions are for display only.
class GeodesicCirclePath final : public CurvePath {
 public:
  GeodesicCirclePath(Geometry g, double radius);
  double length() const override { return 2.0 * std::numbers::pi * scale_; }
  bool closed() const override { return true; }
  Vec2 position(double s) const override;
  double tangent_angle(double s) const override;
  double curvature(double) const override { return curvature_; }

 private:
  double radius_;
  double scale_;
  double curvature_;
};

/// Chain of straight pieces and circular arcs with continuous heading.
class PiecewisePath final : public CurvePath {
 public:
  struct Piece {
    Vec2 start;
    double heading = 0.0;
    double curvature = 0.0;
    double length = 0.0;
  };

  PiecewisePath(std::vector<Piece> pieces, bool closed);

  double length() const override { return starts_.back(); }
  bool closed() const override { return closed_; }
  Vec2 position(double s) const override;
  double tangent_angle(double s) const override;
  double curvature(double s) const override;
  std::vector<double> breakpoints() const override;

 private:
  std::size_t locate(double s) const;

  std::vector<Piece> pieces_;
  std::vector<double> starts_;
  bool closed_;
};

std::shared_ptr<const CurvePath> make_filleted_polyline(const std::vector<Vec2>& vertices,
                                                        bool closed, double fillet_radius);
std::shared_ptr<const CurvePath> make_spline_path(const std::vector<Vec2>& points, bool closed);

}  // namespace tractrix::detail
