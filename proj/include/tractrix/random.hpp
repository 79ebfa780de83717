#pragma once

#include <cstdint>
#include <random>

#include "tractrix/dynamics.hpp"

namespace tractrix {

/// Seeded generator whose output depends only on the seed (the standard
/// distributions are implementation-defined, so uniforms are built by hand).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform() * (hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Strictly convex fourier-support spec: p = 1 + sum_{n=1}^{order} of small
/// terms, scaled so that p + p'' >= 1 - max_distortion.
CurveSpec random_convex_spec(Rng& rng, int order = 4, double max_distortion = 0.6);

/// Smooth closed star-shaped curve r(phi) = 1 + small Fourier terms, given
/// as a periodic spline through 256 samples. Not necessarily convex.
CurveSpec random_star_spec(Rng& rng, int order = 3, double amplitude = 0.25);

/// Smooth loop in (x, y, theta) that generally violates the bicycle
/// constraint; theta winds `winding` times. 256 samples plus the repeated first.
ConfigLoop random_config_loop(Rng& rng, double wheelbase = 1.0, int samples = 256);

}  // namespace tractrix
