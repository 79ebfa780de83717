#pragma once

#include <array>
#include <vector>

#include "tractrix/geom.hpp"

namespace tractrix {

struct BikeParams {
  double wheelbase = 1.0;
  Geometry geometry = Geometry::euclidean;
  /// RK4 steps per pass of the front track.
  int steps_per_pass = 4096;
};

/// Steering angle alpha(t) along a front track, sampled on the RK4 grid.
///
/// alpha is the angle from the frame direction R->F to the front tangent, so
/// the frame direction is tangent_angle(t) - alpha(t) and
///   alpha' = k(t) - c(l) sin(alpha),   c = 1/l, cot l, coth l.
/// Values are unwrapped (continuous reals), not reduced mod 2 pi.
class SteeringSolution {
 public:
  SteeringSolution(FrontTrack track, BikeParams params, std::vector<double> t,
                   std::vector<double> alpha, std::size_t anchor_index,
                   std::vector<std::size_t> cuts);

  const FrontTrack& track() const { return track_; }
  const BikeParams& params() const { return params_; }
  double coefficient() const { return coefficient_; }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& alpha() const { return alpha_; }
  double initial_alpha() const { return alpha_.front(); }
  double final_alpha() const { return alpha_.back(); }
  /// Index of the grid node where the initial condition was imposed.
  std::size_t anchor_index() const { return anchor_; }
  /// Node indices splitting the grid into uniformly spaced pieces (curvature
  /// breakpoints and the anchor), first 0 and last times().size() - 1.
  const std::vector<std::size_t>& cuts() const { return cuts_; }
  /// Composite Simpson of values given at the grid nodes.
  double integrate(const std::vector<double>& f) const;

  /// Right-hand side of the steering equation.
  double rate(double t, double alpha) const;
  /// Cubic Hermite interpolation between grid nodes.
  double alpha_at(double t) const;
  /// Direction of the frame R->F at grid node i.
  double frame_angle(std::size_t i) const;

 private:
  FrontTrack track_;
  BikeParams params_;
  double coefficient_;
  std::vector<double> t_;
  std::vector<double> alpha_;
  std::size_t anchor_;
  std::vector<std::size_t> cuts_;
};

/// Classical RK4 on the steering equation. alpha(anchor_time) = alpha0; the
/// solution is integrated backward to t = 0 when anchor_time > 0. The step is
/// pass_length / steps_per_pass, shortened so that every curvature breakpoint
/// of the track is a grid node.
SteeringSolution integrate_steering(const FrontTrack& track, const BikeParams& params,
                                    double alpha0, double anchor_time = 0.0);

/// Maps alpha(0) to alpha(T) on a fixed RK4 grid whose curvature samples are
/// tabulated once, so many initial angles can be propagated cheaply.
class SteeringPropagator {
 public:
  SteeringPropagator(const FrontTrack& track, const BikeParams& params);

  double propagate(double alpha0) const;
  /// Fundamental matrix {a, b, c, d} of the projective form of the steering
  /// equation, [u, v]' = [[-c/2, k/2], [-k/2, c/2]] [u, v] with
  /// tan(alpha/2) = u/v, integrated on the same grid.
  std::array<double, 4> flow_matrix() const;
  int steps() const { return steps_; }
  /// Same track and grid, different wheelbase; reuses the curvature table.
  SteeringPropagator with_wheelbase(double wheelbase) const;

 private:
  Geometry geometry_;
  double coefficient_;
  int steps_;
  std::vector<double> h_;
  std::vector<double> k_;  // start, middle and end curvature of each step
};

/// Number of RK4 steps used for a track of this length.
int steering_steps(const FrontTrack& track, const BikeParams& params);

struct RearTrack {
  std::vector<double> t;
  std::vector<Vec2> points;
  std::vector<double> cos_alpha;
  /// Parameters where cos(alpha) changes sign (rear wheel reverses).
  std::vector<double> cusp_times;
  double signed_length = 0.0;
  bool closed = false;
};

/// R(t) = F(t) - l (cos(theta - alpha), sin(theta - alpha)). Euclidean only.
RearTrack rear_track(const SteeringSolution& solution);

/// Integral of cos(alpha) dt (composite Simpson on the solution grid).
double signed_rear_length(const SteeringSolution& solution);

/// Signed area of the loop: front track forward, the final rod from F(T) to
/// R(T), the rear track backward, the initial rod from R(0) to F(0).
/// Euclidean only.
double area_between(const SteeringSolution& solution);

/// Closed path in the configuration space of segments of length `wheelbase`:
/// rear end (x, y) and frame direction theta, sampled at uniform parameter
/// values with the first sample repeated at the end (theta may differ there
/// by a multiple of 2 pi). The motion need not satisfy the constraint.
struct ConfigLoop {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> theta;
  double wheelbase = 1.0;
};

struct LoopIdentity {
  double front_area = 0.0;   ///< A_F
  double rear_area = 0.0;    ///< A_R
  double lambda_integral = 0.0;  ///< integral of cos(theta) dy - sin(theta) dx
  double winding = 0.0;      ///< integral of d theta
  double lhs = 0.0;          ///< A_F - A_R
  double rhs = 0.0;          ///< l * lambda_integral + l^2/2 * winding
};

/// Evaluates both sides of the area identity for a configuration loop.
/// Derivatives are 8th-order periodic central differences; integrals are
/// periodic trapezoid sums. Throws ValidationError for open loops.
LoopIdentity loop_identity(const ConfigLoop& loop);

}  // namespace tractrix
