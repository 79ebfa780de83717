#pragma once

#include <optional>
#include <vector>

#include "tractrix/geom.hpp"

namespace tractrix {

/// How the tracer is started.
///   boundary  the tracer starts on the boundary at the base point.
///   centroid  the tracer starts at the area centroid, runs straight out to
///             the base point, goes once around and returns along the same
///             spoke; the rod initially lies along that spoke.
enum class PlanimeterStart { boundary, centroid };

std::string_view to_string(PlanimeterStart s);
PlanimeterStart planimeter_start_from_string(std::string_view name);

struct PlanimeterOptions {
  PlanimeterStart start = PlanimeterStart::centroid;
  /// Initial direction of the rod (chisel -> tracer), radians. Defaults:
  /// boundary start uses the outward normal (chisel placed across the
  /// region), centroid start uses the spoke direction.
  std::optional<double> initial_direction;
  int steps_per_pass = 4096;
};

struct PlanimeterReading {
  double wheelbase = 0.0;
  double base_param = 0.0;
  Vec2 base_point{};
  PlanimeterStart start = PlanimeterStart::centroid;
  double deflection = 0.0;           ///< final minus initial rod direction, in (-pi, pi]
  double estimate = 0.0;             ///< deflection * l^2
  double exact_area = 0.0;           ///< A_F
  double mean_square_radius = 0.0;   ///< about the centroid
  double correction_estimate = 0.0;  ///< A_F (1 + R^2 / (2 l^2))
  double residual_error = 0.0;       ///< estimate - correction_estimate
  double chisel_area = 0.0;          ///< A_R of the chisel path closed by the rotation arc
  double identity_gap = 0.0;         ///< estimate - (A_F - A_R)
  /// Chisel positions along the tracing (not including the closing arc).
  std::vector<Vec2> chisel_path;
  /// Tracer positions matching chisel_path.
  std::vector<Vec2> tracer_path;
};

/// Area centroid of a closed track.
Vec2 centroid(const FrontTrack& track);

/// Simulates one measurement: the tracer goes once around the closed track
/// from the point at `base_param`, the chisel obeys the no-slip constraint,
/// and the loop is closed by rotating the rod about the tracer.
PlanimeterReading measure(const FrontTrack& track, double wheelbase, double base_param,
                          const PlanimeterOptions& options = {});

struct ErrorScanRow {
  double wheelbase;
  double base_param;
  PlanimeterStart start;
  double deflection;
  double estimate;
  double exact;
  double correction;
  double residual;
};

/// Residual table over wheelbases and base points, boundary starts for every
/// base plus one centroid-start row per wheelbase (using the first base).
std::vector<ErrorScanRow> error_scan(const FrontTrack& track, const std::vector<double>& wheelbases,
                                     const std::vector<double>& bases, int steps_per_pass = 4096);

}  // namespace tractrix
