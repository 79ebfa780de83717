#pragma once

#include <string_view>

namespace tractrix {

/// Ambient constant-curvature geometry of the front track.
enum class Geometry { euclidean, spherical, hyperbolic };

std::string_view to_string(Geometry g);
Geometry geometry_from_string(std::string_view name);

/// Geodesic curvature of the circle of radius `wheelbase` in the given
/// geometry: 1/l, cot l, coth l. This is the coefficient of sin(alpha) in
/// the steering equation. Throws ValidationError for l <= 0, or l >= pi on
/// the sphere.
double steering_coefficient(Geometry g, double wheelbase);

}  // namespace tractrix
