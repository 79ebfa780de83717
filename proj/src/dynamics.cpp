#include "tractrix/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "grid.hpp"
#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

namespace {

void check_params(const FrontTrack& track, const BikeParams& params) {
  if (params.steps_per_pass < 2) throw ValidationError("steps per pass must be >= 2");
  if (track.geometry() != params.geometry) {
    throw ValidationError("track geometry does not match the bicycle geometry");
  }
  (void)steering_coefficient(params.geometry, params.wheelbase);
}

double max_step(const FrontTrack& track, const BikeParams& params) {
  return track.pass_length() / params.steps_per_pass;
}

/// One classical RK4 step with curvature samples k0, k_half, k1.
inline double rk4_step(double a, double h, double c, double k0, double kh, double k1) {
  const double s1 = k0 - c * std::sin(a);
  const double s2 = kh - c * std::sin(a + 0.5 * h * s1);
  const double s3 = kh - c * std::sin(a + 0.5 * h * s2);
  const double s4 = k1 - c * std::sin(a + h * s3);
  return a + h * (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0;
}

}  // namespace

namespace detail {

StepGrid make_step_grid(const FrontTrack& track, double t0, double t1, double max_step,
                        const std::vector<double>& extra_cuts) {
  if (!(t1 > t0)) throw ValidationError("empty integration interval");
  if (!(max_step > 0.0)) throw ValidationError("step must be positive");
  std::vector<double> cut{t0, t1};
  for (double b : track.breakpoints()) {
    if (b > t0 && b < t1) cut.push_back(b);
  }
  for (double b : extra_cuts) {
    if (b > t0 && b < t1) cut.push_back(b);
  }
  std::sort(cut.begin(), cut.end());
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());

  StepGrid g;
  g.t.push_back(t0);
  g.cuts.push_back(0);
  for (std::size_t j = 0; j + 1 < cut.size(); ++j) {
    const double a = cut[j], b = cut[j + 1];
    int m = static_cast<int>(std::ceil((b - a) / max_step * (1.0 - 1e-12)));
    m = std::max(m, 2);
    m += m % 2;
    const double h = (b - a) / m;
    // One-sided offsets for the samples at the cut nodes.
    const double eps = 1e-7 * h;
    for (int i = 0; i < m; ++i) {
      const double ta = a + h * i;
      const double tb = i + 1 == m ? b : a + h * (i + 1);
      g.t.push_back(tb);
      g.k.push_back(track.curvature(i == 0 ? ta + eps : ta));
      g.k.push_back(track.curvature(0.5 * (ta + tb)));
      g.k.push_back(track.curvature(i + 1 == m ? tb - eps : tb));
    }
    g.cuts.push_back(g.t.size() - 1);
  }
  return g;
}

double piecewise_simpson(const std::vector<double>& t, const std::vector<std::size_t>& cuts,
                         const std::vector<double>& f) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const std::size_t a = cuts[j], b = cuts[j + 1];
    if (b <= a) continue;
    if ((b - a) % 2 == 0) {
      const double h = (t[b] - t[a]) / static_cast<double>(b - a);
      double s = f[a] + f[b];
      for (std::size_t i = a + 1; i < b; ++i) s += ((i - a) % 2 ? 4.0 : 2.0) * f[i];
      total += s * h / 3.0;
    } else {
      for (std::size_t i = a; i < b; ++i) total += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
    }
  }
  return total;
}

}  // namespace detail

int steering_steps(const FrontTrack& track, const BikeParams& params) {
  return static_cast<int>(
      detail::make_step_grid(track, 0.0, track.total_length(), max_step(track, params)).steps());
}

// ---------------------------------------------------------------------------

SteeringSolution::SteeringSolution(FrontTrack track, BikeParams params, std::vector<double> t,
                                   std::vector<double> alpha, std::size_t anchor_index,
                                   std::vector<std::size_t> cuts)
    : track_(std::move(track)),
      params_(params),
      coefficient_(steering_coefficient(params.geometry, params.wheelbase)),
      t_(std::move(t)),
      alpha_(std::move(alpha)),
      anchor_(anchor_index),
      cuts_(std::move(cuts)) {
  if (t_.size() != alpha_.size() || t_.size() < 2) throw ValidationError("malformed steering solution");
  if (cuts_.empty()) cuts_ = {0, t_.size() - 1};
}

double SteeringSolution::integrate(const std::vector<double>& f) const {
  if (f.size() != t_.size()) throw ValidationError("integrand does not match the grid");
  return detail::piecewise_simpson(t_, cuts_, f);
}

double SteeringSolution::rate(double t, double a) const {
  return track_.curvature(t) - coefficient_ * std::sin(a);
}

double SteeringSolution::alpha_at(double t) const {
  if (t <= t_.front()) return alpha_.front();
  if (t >= t_.back()) return alpha_.back();
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double y0 = alpha_[i], y1 = alpha_[i + 1];
  // Slopes from inside the interval, in case k jumps at a node.
  const double e = 1e-7 * h;
  const double m0 = h * rate(t_[i] + e, y0), m1 = h * rate(t_[i + 1] - e, y1);
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * m1;
}

double SteeringSolution::frame_angle(std::size_t i) const {
  return track_.tangent_angle(t_[i]) - alpha_[i];
}

SteeringSolution integrate_steering(const FrontTrack& track, const BikeParams& params,
                                    double alpha0, double anchor_time) {
  check_params(track, params);
  const double T = track.total_length();
  if (anchor_time < 0.0 || anchor_time > T) throw ValidationError("anchor outside the track");
  const double c = steering_coefficient(params.geometry, params.wheelbase);
  const auto g = detail::make_step_grid(track, 0.0, T, max_step(track, params), {anchor_time});

  std::size_t anchor = 0;
  if (anchor_time >= T) {
    anchor = g.steps();
  } else if (anchor_time > 0.0) {
    anchor = static_cast<std::size_t>(std::lower_bound(g.t.begin(), g.t.end(), anchor_time) - g.t.begin());
  }
  std::vector<double> alpha(g.t.size());
  alpha[anchor] = alpha0;
  for (std::size_t i = anchor; i < g.steps(); ++i) {
    alpha[i + 1] = rk4_step(alpha[i], g.h(i), c, g.k0(i), g.kh(i), g.k1(i));
  }
  for (std::size_t i = anchor; i-- > 0;) {
    alpha[i] = rk4_step(alpha[i + 1], -g.h(i), c, g.k1(i), g.kh(i), g.k0(i));
  }
  return SteeringSolution(track, params, g.t, std::move(alpha), anchor, g.cuts);
}

SteeringPropagator::SteeringPropagator(const FrontTrack& track, const BikeParams& params)
    : geometry_(params.geometry), coefficient_(steering_coefficient(params.geometry, params.wheelbase)) {
  check_params(track, params);
  auto g = detail::make_step_grid(track, 0.0, track.total_length(), max_step(track, params));
  steps_ = static_cast<int>(g.steps());
  h_.resize(g.steps());
  for (std::size_t i = 0; i < g.steps(); ++i) h_[i] = g.h(i);
  k_ = std::move(g.k);
}

SteeringPropagator SteeringPropagator::with_wheelbase(double wheelbase) const {
  SteeringPropagator p = *this;
  p.coefficient_ = steering_coefficient(geometry_, wheelbase);
  return p;
}

double SteeringPropagator::propagate(double alpha0) const {
  double a = alpha0;
  for (int i = 0; i < steps_; ++i) {
    a = rk4_step(a, h_[i], coefficient_, k_[3 * i], k_[3 * i + 1], k_[3 * i + 2]);
  }
  return a;
}

std::array<double, 4> SteeringPropagator::flow_matrix() const {
  using M = std::array<double, 4>;
  const double hc = 0.5 * coefficient_;
  const auto rhs = [hc](double k, const M& m) {
    const double hk = 0.5 * k;
    // G m with G = [[-hc, hk], [-hk, hc]]
    return M{-hc * m[0] + hk * m[2], -hc * m[1] + hk * m[3], -hk * m[0] + hc * m[2],
             -hk * m[1] + hc * m[3]};
  };
  const auto axpy = [](const M& x, double s, const M& y) {
    return M{x[0] + s * y[0], x[1] + s * y[1], x[2] + s * y[2], x[3] + s * y[3]};
  };
  M m{1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < steps_; ++i) {
    const double h = h_[i];
    const M s1 = rhs(k_[3 * i], m);
    const M s2 = rhs(k_[3 * i + 1], axpy(m, 0.5 * h, s1));
    const M s3 = rhs(k_[3 * i + 1], axpy(m, 0.5 * h, s2));
    const M s4 = rhs(k_[3 * i + 2], axpy(m, h, s3));
    for (int j = 0; j < 4; ++j) m[j] += h * (s1[j] + 2.0 * s2[j] + 2.0 * s3[j] + s4[j]) / 6.0;
  }
  return m;
}

double signed_rear_length(const SteeringSolution& solution) {
  std::vector<double> ca(solution.alpha().size());
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = std::cos(solution.alpha()[i]);
  return solution.integrate(ca);
}

double area_between(const SteeringSolution& solution) {
  const FrontTrack& track = solution.track();
  if (track.geometry() != Geometry::euclidean) {
    throw ValidationError("area_between needs a Euclidean track");
  }
  const double l = solution.params().wheelbase;
  const auto& t = solution.times();
  const std::size_t n = t.size();
  const Vec2 ref = track.position(0.0);
  // 1/2 (F x F' - R x R') along the grid; the rods are straight, so their
  // contributions are exact.
  std::vector<double> g(n);
  std::vector<Vec2> rear(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u = unit(solution.frame_angle(i));
    const Vec2 f = track.position(t[i]) - ref;
    rear[i] = f - l * u;
    g[i] = 0.5 * (cross(f, unit(track.tangent_angle(t[i]))) -
                  cross(rear[i], std::cos(solution.alpha()[i]) * u));
  }
  const Vec2 f_end = track.position(t.back()) - ref;
  const Vec2 f_start{0.0, 0.0};
  return solution.integrate(g) + 0.5 * cross(f_end, rear.back()) +
         0.5 * cross(rear.front(), f_start);
}

RearTrack rear_track(const SteeringSolution& solution) {
  const FrontTrack& track = solution.track();
  if (track.geometry() != Geometry::euclidean) {
    throw ValidationError("rear_track reconstructs Euclidean tracks only");
  }
  const double l = solution.params().wheelbase;
  RearTrack r;
  r.t = solution.times();
  const std::size_t n = r.t.size();
  r.points.resize(n);
  r.cos_alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.points[i] = track.position(r.t[i]) - l * unit(solution.frame_angle(i));
    r.cos_alpha[i] = std::cos(solution.alpha()[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = r.cos_alpha[i], b = r.cos_alpha[i + 1];
    if ((a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0)) {
      if (b == 0.0 && i + 2 < n && (r.cos_alpha[i + 2] > 0.0) == (a > 0.0)) continue;
      r.cusp_times.push_back(r.t[i] + (r.t[i + 1] - r.t[i]) * a / (a - b));
    }
  }
  r.signed_length = signed_rear_length(solution);
  r.closed = track.closed() && norm(r.points.back() - r.points.front()) < 1e-6 * l;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> periodic_derivative(const std::vector<double>& f) {
  // 8th-order central differences in units of the sample index.
  static constexpr std::array<double, 4> c{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) acc += c[k - 1] * (f[(i + k) % n] - f[(i + n - k) % n]);
    d[i] = acc;
  }
  return d;
}

}  // namespace

LoopIdentity loop_identity(const ConfigLoop& loop) {
  const std::size_t m = loop.x.size();
  if (m != loop.y.size() || m != loop.theta.size()) {
    throw ValidationError("loop arrays differ in length");
  }
  if (m < 10) throw ValidationError("loop needs at least 10 samples");
  if (!(loop.wheelbase > 0.0)) throw ValidationError("loop wheelbase must be positive");
  const std::size_t n = m - 1;
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max({scale, std::abs(loop.x[i]), std::abs(loop.y[i])});
  scale = std::max(scale, loop.wheelbase);
  const double winding_turns = (loop.theta[n] - loop.theta[0]) / (2.0 * pi);
  const double w = std::round(winding_turns);
  if (std::abs(loop.x[n] - loop.x[0]) > 1e-9 * scale || std::abs(loop.y[n] - loop.y[0]) > 1e-9 * scale ||
      std::abs(winding_turns - w) > 1e-9) {
    throw ValidationError("configuration loop is not closed");
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += loop.x[i];
    my += loop.y[i];
  }
  mx /= n;
  my /= n;
  std::vector<double> x(n), y(n), th(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = loop.x[i] - mx;
    y[i] = loop.y[i] - my;
    th[i] = loop.theta[i] - 2.0 * pi * w * static_cast<double>(i) / n;
  }
  const auto dx = periodic_derivative(x), dy = periodic_derivative(y);
  auto dth = periodic_derivative(th);
  for (auto& v : dth) v += 2.0 * pi * w / n;

  const double l = loop.wheelbase;
  LoopIdentity r;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = loop.theta[i];
    const double c = std::cos(theta), s = std::sin(theta);
    const double X = x[i] + l * c, Y = y[i] + l * s;
    const double dX = dx[i] - l * s * dth[i], dY = dy[i] + l * c * dth[i];
    r.front_area += 0.5 * (X * dY - Y * dX);
    r.rear_area += 0.5 * (x[i] * dy[i] - y[i] * dx[i]);
    r.lambda_integral += c * dy[i] - s * dx[i];
  }
  r.winding = 2.0 * pi * w;
  r.lhs = r.front_area - r.rear_area;
  r.rhs = l * r.lambda_integral + 0.5 * l * l * r.winding;
  return r;
}

}  // namespace tractrix
