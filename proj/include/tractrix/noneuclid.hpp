#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tractrix/moebius.hpp"

namespace tractrix {

/// Point or vector in R^{1,2}, components (x0, x1, x2).
using Vec3 = std::array<double, 3>;

/// <a, b> = a0 b0 - a1 b1 - a2 b2.
double minkowski(const Vec3& a, const Vec3& b);

/// Arc-length parameterized curve in the hyperboloid model of H^2
/// (<P, P> = 1, x0 > 0) with its Frenet frame: tangent T and left normal N,
/// <T, T> = <N, N> = -1.
struct HCurve {
  std::vector<double> t;
  std::vector<double> curvature;
  std::vector<Vec3> points;
  std::vector<Vec3> tangents;
  std::vector<Vec3> normals;

  /// Ambient Euclidean distance between the first and last point.
  double point_gap() const;
  /// Largest ambient distance between first and last T or N.
  double frame_gap() const;
  /// Largest deviation of the frame from Minkowski orthonormality.
  double frame_defect() const;
};

/// Develops the curvature function k on [0, length] into H^2 by classical RK4
/// on the Frenet system
///   P' = T,  T' = P + k N,  N' = -k T,
/// starting from P = (1,0,0), T = (0,1,0), N = (0,0,1); the frame is
/// re-orthonormalized after every step. Curves that run far out (coordinates
/// beyond 1e12, where the hyperboloid model has no precision left) raise
/// NumericalError.
HCurve develop_hyperbolic(const std::function<double(double)>& k, double length, int steps);

/// Development of a track's curvature function, `steps_per_pass` steps per
/// pass, with grid nodes at the curvature breakpoints.
HCurve develop_hyperbolic(const FrontTrack& track, int steps_per_pass = 4096);

/// Poincare disk image (x1, x2) / (1 + x0).
Vec2 poincare(const Vec3& p);

/// Null direction (1, cos phi, sin phi): the ideal point seen in direction
/// phi from the origin of the disk.
Vec3 ideal_point(double phi);

/// Angle between the tangent of the curve and the geodesic ray towards the
/// ideal point `star`, measured so that it obeys alpha' = k - sin(alpha) (the
/// star plays the part of an infinitely distant rear wheel). Unwrapped.
/// ValidationError unless `star` is a future-pointing null vector.
std::vector<double> stargazing_angle(const HCurve& curve, const Vec3& star);

/// Enclosed area by Gauss-Bonnet: 2 pi - integral k on the sphere (the side
/// to the left of the curve), integral k - 2 pi in H^2. The track must be a
/// closed simple curve of the given geometry traversed once.
double geodesic_area(const FrontTrack& track);

struct HpzReport {
  Geometry geometry = Geometry::spherical;
  double wheelbase = 0.0;
  double area = 0.0;
  double threshold = 0.0;  ///< 2 pi (1 - cos l) or 2 pi (cosh l - 1)
  bool convex = false;     ///< k > 0 on the sphere, k > 1 in H^2
  bool applicable = false;
  std::string reason;      ///< why the hypothesis fails, empty when applicable
  double trace = 0.0;
  MonodromyClass cls = MonodromyClass::parabolic;
  bool identity = false;
  /// applicable implies hyperbolic; always true when not applicable.
  bool passed = false;
};

/// Checks the hypotheses of the curved-space area criterion and, when they
/// hold, that the monodromy is hyperbolic. The monodromy is computed in
/// every case.
HpzReport hpz_verify(const FrontTrack& track, double wheelbase, int steps_per_pass = 4096);

}  // namespace tractrix
