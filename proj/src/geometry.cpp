#include "tractrix/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tractrix/error.hpp"

namespace tractrix {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::euclidean: return "euclidean";
    case Geometry::spherical: return "spherical";
    case Geometry::hyperbolic: return "hyperbolic";
  }
  return "euclidean";
}

Geometry geometry_from_string(std::string_view name) {
  if (name == "euclidean" || name == "plane") return Geometry::euclidean;
  if (name == "spherical" || name == "sphere") return Geometry::spherical;
  if (name == "hyperbolic" || name == "h2") return Geometry::hyperbolic;
  throw ValidationError("unknown geometry '" + std::string(name) + "'");
}

double steering_coefficient(Geometry g, double wheelbase) {
  if (!(wheelbase > 0.0) || !std::isfinite(wheelbase)) {
    throw ValidationError("wheelbase must be a positive finite length");
  }
  switch (g) {
    case Geometry::euclidean:
      return 1.0 / wheelbase;
    case Geometry::spherical:
      if (wheelbase >= std::numbers::pi) {
        throw ValidationError("spherical wheelbase must be below pi");
      }
      return std::cos(wheelbase) / std::sin(wheelbase);
    case Geometry::hyperbolic:
      return 1.0 / std::tanh(wheelbase);
  }
  return 1.0 / wheelbase;
}

}  // namespace tractrix
