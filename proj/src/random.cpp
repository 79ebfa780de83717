#include "tractrix/random.hpp"

#include <cmath>
#include <numbers>

namespace tractrix {

using std::numbers::pi;

CurveSpec random_convex_spec(Rng& rng, int order, double max_distortion) {
  CurveSpec s;
  s.kind = CurveKind::fourier_support;
  s.cos_coeffs.assign(order + 1, 0.0);
  s.sin_coeffs.assign(order + 1, 0.0);
  s.cos_coeffs[0] = 1.0;
  double weight = 0.0;
  for (int n = 1; n <= order; ++n) {
    s.cos_coeffs[n] = rng.uniform(-1.0, 1.0) / (n * n);
    s.sin_coeffs[n] = rng.uniform(-1.0, 1.0) / (n * n);
    weight += (n * n - 1.0) * (std::abs(s.cos_coeffs[n]) + std::abs(s.sin_coeffs[n]));
  }
  const double target = max_distortion * rng.uniform(0.3, 1.0);
  if (weight > 0.0) {
    for (int n = 2; n <= order; ++n) {
      s.cos_coeffs[n] *= target / weight;
      s.sin_coeffs[n] *= target / weight;
    }
  }
  s.rotation = rng.uniform(0.0, 2.0 * pi);
  return s;
}

CurveSpec random_star_spec(Rng& rng, int order, double amplitude) {
  std::vector<double> a(order + 1), b(order + 1);
  for (int n = 1; n <= order; ++n) {
    a[n] = rng.uniform(-1.0, 1.0) * amplitude / n;
    b[n] = rng.uniform(-1.0, 1.0) * amplitude / n;
  }
  CurveSpec s;
  s.kind = CurveKind::samples;
  s.closed = true;
  constexpr int m = 256;
  for (int i = 0; i < m; ++i) {
    const double phi = 2.0 * pi * i / m;
    double r = 1.0;
    for (int n = 1; n <= order; ++n) r += a[n] * std::cos(n * phi) + b[n] * std::sin(n * phi);
    s.points.push_back(r * unit(phi));
  }
  return s;
}

ConfigLoop random_config_loop(Rng& rng, double wheelbase, int samples) {
  constexpr int order = 3;
  std::array<double, order + 1> ax{}, bx{}, ay{}, by{}, at{}, bt{};
  for (int n = 1; n <= order; ++n) {
    ax[n] = rng.uniform(-1.0, 1.0) / n;
    bx[n] = rng.uniform(-1.0, 1.0) / n;
    ay[n] = rng.uniform(-1.0, 1.0) / n;
    by[n] = rng.uniform(-1.0, 1.0) / n;
    at[n] = rng.uniform(-1.0, 1.0) / n;
    bt[n] = rng.uniform(-1.0, 1.0) / n;
  }
  const int winding = rng.integer(-1, 2);
  const Vec2 shift{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
  ConfigLoop loop;
  loop.wheelbase = wheelbase;
  for (int i = 0; i <= samples; ++i) {
    const int j = i % samples;
    const double s = 2.0 * pi * j / samples;
    double x = shift.x, y = shift.y, th = winding * s;
    for (int n = 1; n <= order; ++n) {
      const double c = std::cos(n * s), sn = std::sin(n * s);
      x += ax[n] * c + bx[n] * sn;
      y += ay[n] * c + by[n] * sn;
      th += at[n] * c + bt[n] * sn;
    }
    if (i == samples) th += 2.0 * pi * winding;
    loop.x.push_back(x);
    loop.y.push_back(y);
    loop.theta.push_back(th);
  }
  return loop;
}

}  // namespace tractrix
