#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tractrix/dynamics.hpp"
#include "tractrix/moebius.hpp"

namespace tractrix {

/// 1 / max k over the first pass. Requires a closed convex track.
double min_osculating_radius(const FrontTrack& track);

struct MenzinOptions {
  /// Multiplicative step of the coarse wheelbase scan.
  double scan_ratio = 1.05;
  /// Bisection tolerance on l; 0 selects 1e-6 * sqrt(A / pi).
  double tolerance = 0.0;
  int steps_per_pass = 4096;
  /// The scan stops at cap_factor * sqrt(A / pi).
  double cap_factor = 10.0;
};

struct ClassificationSample {
  double wheelbase;
  double trace;  ///< |trace| of the normalized monodromy
  MonodromyClass cls;
};

/// A sign change of |trace| - 2 between two consecutive scan samples.
struct Transition {
  double lower;
  double upper;
  MonodromyClass below;
  MonodromyClass above;
};

struct CriticalLength {
  double wheelbase = 0.0;  ///< l0, midpoint of the final bracket
  double lower = 0.0;
  double upper = 0.0;
  int bisections = 0;
  std::vector<ClassificationSample> curve;
  std::vector<Transition> transitions;
};

/// |trace| of the monodromy at wheelbase l, from the projective flow.
double monodromy_trace(const FrontTrack& track, double wheelbase, int steps_per_pass = 4096);

/// Scans |trace|(l) upward from just below the minimal osculating radius and
/// bisects the first crossing of |trace| = 2. Every crossing seen below the
/// cap is recorded. NumericalError if none is found.
CriticalLength critical_length(const FrontTrack& track, const MenzinOptions& options = {});

struct DefectBound {
  double wheelbase = 0.0;
  double front_length = 0.0;
  double front_area = 0.0;
  double defect = 0.0;       ///< L_F^2 - 4 pi A_F
  double rear_area = 0.0;    ///< A_0 from the area identity
  double rear_area_direct = 0.0;  ///< A_0 by integrating along the rear track
  double rear_turning = 0.0;      ///< total rotation of the frame along the closed rear track
  double rear_length = 0.0;       ///< signed length of the closed rear track
  double fixed_angle = 0.0;
  double bound = 0.0;        ///< -4 pi A_0
  bool holds = false;        ///< defect >= bound - 1e-6 scale^2
};

/// Isoperimetric defect of the track and the lower bound -4 pi A_0 from the
/// closed rear track at the attracting (or parabolic) fixed angle.
/// ValidationError when the monodromy at l is elliptic.
DefectBound defect_bound(const FrontTrack& track, double wheelbase, int steps_per_pass = 4096);

struct StageCheck {
  double wheelbase = 0.0;
  double trace = 0.0;
  MonodromyClass cls = MonodromyClass::parabolic;
  bool passed = false;
};

struct MenzinReport {
  double area = 0.0;
  double perimeter = 0.0;
  double min_osculating_radius = 0.0;
  StageCheck small;  ///< l = r / 2, expected hyperbolic
  StageCheck large;  ///< l = 10 sqrt(A / pi), expected elliptic
  std::optional<CriticalLength> critical;
  double critical_length = 0.0;
  double area_ratio = 0.0;  ///< A / (pi l0^2)
  bool bound_check = false;  ///< A <= pi l0^2 (1 + 1e-4)
  bool radius_below_critical = false;  ///< r <= l0
  std::optional<DefectBound> defect;   ///< at the last hyperbolic scan sample below l0
  bool passed = false;
  std::vector<std::string> failures;
};

/// Runs every stage and collects failures instead of throwing. Only invalid
/// input (open, non-convex, non-simple or non-Euclidean tracks) throws.
MenzinReport menzin_verify(const FrontTrack& track, const MenzinOptions& options = {});

/// Closed rear tracks at the attracting fixed angle for each wheelbase;
/// wheelbases with elliptic monodromy are skipped.
std::vector<RearTrack> nested_rear_tracks(const FrontTrack& track,
                                          const std::vector<double>& wheelbases,
                                          int steps_per_pass = 4096);

}  // namespace tractrix
