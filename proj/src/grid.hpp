#pragma once

#include <cstddef>
#include <vector>

#include "tractrix/geom.hpp"

namespace tractrix::detail {

/// Piecewise uniform integration grid on [t0, t1]. Every curvature breakpoint
/// of the track (and every extra cut) is a node; between consecutive cuts the
/// steps are equal, even in number and no longer than the requested step.
/// Curvature is sampled at the start, middle and end of each step, with the
/// samples at cut nodes taken from inside the step so that a jump in k is
/// never straddled.
struct StepGrid {
  std::vector<double> t;
  std::vector<std::size_t> cuts;  ///< node indices, first 0, last steps()
  std::vector<double> k;          ///< 3 samples per step

  std::size_t steps() const { return t.size() - 1; }
  double h(std::size_t i) const { return t[i + 1] - t[i]; }
  double k0(std::size_t i) const { return k[3 * i]; }
  double kh(std::size_t i) const { return k[3 * i + 1]; }
  double k1(std::size_t i) const { return k[3 * i + 2]; }
};

StepGrid make_step_grid(const FrontTrack& track, double t0, double t1, double max_step,
                        const std::vector<double>& extra_cuts = {});

/// Composite Simpson over each uniform piece of a grid.
double piecewise_simpson(const std::vector<double>& t, const std::vector<std::size_t>& cuts,
                         const std::vector<double>& f);

}  // namespace tractrix::detail
