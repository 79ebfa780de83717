#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "tractrix/dynamics.hpp"

namespace tractrix {

/// Real fractional-linear map x -> (a x + b) / (c x + d) with ad - bc = 1 and
/// a + d >= 0, acting on steering angles through x = tan(alpha / 2). Angles
/// are handled in homogeneous coordinates [sin(alpha/2) : cos(alpha/2)], so
/// alpha = pi (x = infinity) needs no special case.
class MoebiusMap {
 public:
  /// Normalizes an arbitrary matrix with positive determinant.
  static MoebiusMap from_matrix(double a, double b, double c, double d);
  /// For matrices known to have determinant one (e.g. the fundamental matrix
  /// of a traceless linear system) whose computed determinant is unreliable
  /// because the entries are large. Only the sign is normalized.
  static MoebiusMap from_unimodular(double a, double b, double c, double d);
  static MoebiusMap identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }
  /// The map alpha -> alpha + angle.
  static MoebiusMap rotation(double angle);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  std::array<double, 4> entries() const { return {a_, b_, c_, d_}; }
  double trace() const { return a_ + d_; }
  double determinant() const { return a_ * d_ - b_ * c_; }

  /// Image angle in [0, 2 pi).
  double apply(double alpha) const;
  /// Derivative of the induced circle map at alpha.
  double derivative(double alpha) const;
  MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }
  /// Largest entry difference to the identity (trace-normalized, so -I counts as I).
  double distance_to_identity() const;
  /// Largest entry difference, minimized over the sign of `other`.
  double distance_to(const MoebiusMap& other) const;

  friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs);

 private:
  MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

  double a_, b_, c_, d_;
};

struct AnglePair {
  double input;
  double output;
};

/// The unique Moebius map sending each input angle to its output angle.
/// Throws ValidationError when inputs (or outputs) coincide mod 2 pi or the
/// data describe an orientation-reversing map.
MoebiusMap moebius_from_three(const std::array<AnglePair, 3>& pairs);

enum class MonodromyClass { elliptic, parabolic, hyperbolic };

std::string_view to_string(MonodromyClass c);
MonodromyClass monodromy_class_from_string(std::string_view name);

/// elliptic if |tr| < 2 - eps, parabolic if ||tr| - 2| <= eps, else hyperbolic.
MonodromyClass classify(const MoebiusMap& map, double eps = 1e-7);

struct FixedPoint {
  double angle;       ///< in [0, 2 pi)
  double multiplier;  ///< derivative of the circle map there
};

/// Fixed points of a parabolic or hyperbolic map, attracting first. Elliptic
/// maps and the identity (every point fixed) give an empty list.
std::vector<FixedPoint> fixed_points(const MoebiusMap& map, double eps = 1e-7);

struct MonodromyOptions {
  double parabolic_floor = 1e-7;
  double residual_target = 1e-6;
  double identity_tolerance = 1e-6;
  int max_doublings = 4;
  double min_probe_separation = 1e-6;
};

/// How the map was obtained. The three-point fit loses precision once the
/// probe endpoints crowd together (strong contraction); below
/// `MonodromyOptions::min_probe_separation` the projective flow of the same
/// equation is used instead.
enum class MonodromyMethod { three_point_fit, projective_flow };

std::string_view to_string(MonodromyMethod m);
MonodromyMethod monodromy_method_from_string(std::string_view name);

struct MonodromyReport {
  MoebiusMap map = MoebiusMap::identity();
  MonodromyMethod method = MonodromyMethod::three_point_fit;
  MonodromyClass cls = MonodromyClass::parabolic;
  bool identity = false;
  double trace = 2.0;
  std::vector<FixedPoint> fixed;
  /// Signed rear length along the trajectory starting at each fixed angle.
  std::vector<double> rear_lengths;
  double fit_residual = 0.0;
  double parabolic_tolerance = 1e-7;
  double wheelbase = 1.0;
  Geometry geometry = Geometry::euclidean;
  int steps = 0;
};

/// Probe angles used to fit the monodromy and the held-out validation angle.
inline constexpr std::array<double, 3> kProbeAngles{0.0, 2.0943951023931957, 4.1887902047863905};
inline constexpr double kValidationAngle = 1.5707963267948966;

/// Monodromy of the steering equation along the track, fitted from three
/// integrated trajectories and validated on a fourth. The step count is
/// doubled until the validation residual is below target; NumericalError if
/// the cap is reached.
MonodromyReport monodromy(const FrontTrack& track, const BikeParams& params,
                          const MonodromyOptions& options = {});

/// Fit only: three probe propagations, no validation or fixed-point analysis.
MoebiusMap fit_monodromy(const SteeringPropagator& propagator);

}  // namespace tractrix
