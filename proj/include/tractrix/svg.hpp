#pragma once

#include <string>
#include <vector>

#include "tractrix/dynamics.hpp"
#include "tractrix/noneuclid.hpp"
#include "tractrix/planimeter.hpp"

namespace tractrix {

/// Minimal SVG canvas in world coordinates (y up). Elements are emitted in
/// insertion order; the view box is fitted to everything drawn.
class SvgFigure {
 public:
  void polyline(const std::vector<Vec2>& points, const std::string& stroke, double width = 1.5,
                bool closed = false, const std::string& dash = "");
  /// Filled dot with a radius in pixels.
  void dot(Vec2 center, double radius_px, const std::string& fill);
  void circle(Vec2 center, double radius, const std::string& stroke, double width = 1.0);
  void text(Vec2 at, const std::string& content, const std::string& fill = "#333");

  std::string render(double width_px = 800.0) const;

 private:
  struct Item {
    enum Kind { line, dot, circle, text } kind;
    std::vector<Vec2> points;
    double size = 0.0;
    std::string color;
    std::string dash;
    std::string content;
    bool closed = false;
  };
  std::vector<Item> items_;
};

/// Front track, rear track, and the rear cusps as dots.
std::string rear_track_svg(const SteeringSolution& solution, const RearTrack& rear);
/// Traced boundary, chisel zig-zag, and the closing arc about the tracer.
std::string planimeter_svg(const PlanimeterReading& reading);
/// Development in the Poincare disk with the boundary circle.
std::string poincare_svg(const HCurve& curve);
/// Front track with the closed rear tracks for several wheelbases.
std::string nested_tracks_svg(const FrontTrack& front, const std::vector<RearTrack>& rears);

}  // namespace tractrix
