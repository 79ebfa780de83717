#include "tractrix/menzin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

namespace {

void require_convex_loop(const FrontTrack& track) {
  if (track.geometry() != Geometry::euclidean) throw ValidationError("Euclidean track required");
  if (!track.closed()) throw ValidationError("closed track required");
  if (!track.convex()) throw ValidationError("convex track required (k > 0)");
}

MonodromyClass class_of_trace(double abs_trace, double eps) {
  if (abs_trace < 2.0 - eps) return MonodromyClass::elliptic;
  if (abs_trace > 2.0 + eps) return MonodromyClass::hyperbolic;
  return MonodromyClass::parabolic;
}

std::string describe(const char* what, double ell) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at l = " << ell;
  return os.str();
}

}  // namespace

double min_osculating_radius(const FrontTrack& track) {
  require_convex_loop(track);
  return 1.0 / track.max_curvature();
}

namespace {

// The generator is traceless, so the flow has determinant one.
double flow_trace(const SteeringPropagator& prop) {
  const auto m = prop.flow_matrix();
  return std::abs(m[0] + m[3]);
}

}  // namespace

double monodromy_trace(const FrontTrack& track, double wheelbase, int steps_per_pass) {
  BikeParams p;
  p.wheelbase = wheelbase;
  p.steps_per_pass = steps_per_pass;
  return flow_trace(SteeringPropagator(track, p));
}

CriticalLength critical_length(const FrontTrack& track, const MenzinOptions& options) {
  require_convex_loop(track);
  if (!(options.scan_ratio > 1.0)) throw ValidationError("scan ratio must exceed 1");
  if (!is_simple(track)) throw ValidationError("simple closed track required");
  const double area = enclosed_area(track);
  const double scale = std::sqrt(area / pi);
  const double tol = options.tolerance > 0.0 ? options.tolerance : 1e-6 * scale;
  const double r = min_osculating_radius(track);
  const double cap = options.cap_factor * scale;

  // The first sample sits one step below r, where hyperbolicity is guaranteed.
  std::vector<double> ells;
  for (double ell = r / options.scan_ratio; ell <= cap * (1.0 + 1e-12); ell *= options.scan_ratio) {
    ells.push_back(ell);
  }
  if (ells.size() < 2) throw ValidationError("scan range is empty");

  BikeParams params;
  params.wheelbase = r;
  params.steps_per_pass = options.steps_per_pass;
  const SteeringPropagator base(track, params);
  const auto f = [&](double ell) { return flow_trace(base.with_wheelbase(ell)) - 2.0; };

  CriticalLength out;
  out.curve.resize(ells.size());
  detail::parallel_for(ells.size(), [&](std::size_t i) {
    const double tr = f(ells[i]) + 2.0;
    out.curve[i] = {ells[i], tr, class_of_trace(tr, 1e-7)};
  });

  for (std::size_t i = 1; i < ells.size(); ++i) {
    const bool before = out.curve[i - 1].trace - 2.0 > 0.0;
    const bool after = out.curve[i].trace - 2.0 > 0.0;
    if (before != after) {
      out.transitions.push_back({ells[i - 1], ells[i], out.curve[i - 1].cls, out.curve[i].cls});
    }
  }
  if (out.transitions.empty()) {
    throw NumericalError(describe("no parabolic transition found up to the cap", cap));
  }

  double lo = out.transitions.front().lower, hi = out.transitions.front().upper;
  const bool lo_positive = f(lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.bisections;
  }
  out.lower = lo;
  out.upper = hi;
  out.wheelbase = 0.5 * (lo + hi);
  return out;
}

DefectBound defect_bound(const FrontTrack& track, double wheelbase, int steps_per_pass) {
  require_convex_loop(track);
  BikeParams p;
  p.wheelbase = wheelbase;
  p.steps_per_pass = steps_per_pass;
  const auto mono = monodromy(track, p);
  if (!mono.identity && mono.cls == MonodromyClass::elliptic) {
    throw ValidationError(describe("elliptic monodromy, no closed rear track", wheelbase));
  }
  DefectBound out;
  out.wheelbase = wheelbase;
  out.fixed_angle = mono.fixed.empty() ? 0.0 : mono.fixed.front().angle;

  const auto sol = integrate_steering(track, p, out.fixed_angle);
  const auto rear = rear_track(sol);
  const std::size_t n = sol.times().size();
  out.rear_turning = sol.frame_angle(n - 1) - sol.frame_angle(0);
  out.rear_length = rear.signed_length;

  out.front_length = track.total_length();
  out.front_area = enclosed_area(track);
  out.defect = out.front_length * out.front_length - 4.0 * pi * out.front_area;
  out.rear_area = out.front_area - 0.5 * wheelbase * wheelbase * out.rear_turning;

  // Direct signed area, 1/2 integral of R x R' with R' = cos(alpha) u.
  const Vec2 ref = track.position(0.0);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = 0.5 * cross(rear.points[i] - ref, rear.cos_alpha[i] * unit(sol.frame_angle(i)));
  }
  out.rear_area_direct = sol.integrate(g);

  out.bound = -4.0 * pi * out.rear_area;
  const double scale2 = std::pow(out.front_length / (2.0 * pi), 2);
  out.holds = out.defect >= out.bound - 1e-6 * scale2;
  return out;
}

MenzinReport menzin_verify(const FrontTrack& track, const MenzinOptions& options) {
  require_convex_loop(track);
  if (!is_simple(track)) throw ValidationError("simple closed track required");
  MenzinReport rep;
  rep.area = enclosed_area(track);
  rep.perimeter = track.total_length();
  rep.min_osculating_radius = min_osculating_radius(track);
  const double scale = std::sqrt(rep.area / pi);

  BikeParams p;
  p.steps_per_pass = options.steps_per_pass;
  const auto stage = [&](double ell, MonodromyClass want, const char* name) {
    StageCheck s;
    s.wheelbase = ell;
    p.wheelbase = ell;
    try {
      const auto m = monodromy(track, p);
      s.trace = std::abs(m.trace);
      s.cls = m.identity ? MonodromyClass::parabolic : m.cls;
      s.passed = !m.identity && m.cls == want;
    } catch (const NumericalError& e) {
      rep.failures.push_back(describe(name, ell) + ": " + e.what());
      return s;
    }
    if (!s.passed) {
      rep.failures.push_back(describe(name, ell) + ": monodromy is " + std::string(to_string(s.cls)));
    }
    return s;
  };
  rep.small = stage(0.5 * rep.min_osculating_radius, MonodromyClass::hyperbolic, "hyperbolicity check");
  rep.large = stage(options.cap_factor * scale, MonodromyClass::elliptic, "ellipticity check");

  try {
    rep.critical = critical_length(track, options);
  } catch (const NumericalError& e) {
    rep.failures.push_back(e.what());
  }
  if (rep.critical) {
    const double l0 = rep.critical->wheelbase;
    rep.critical_length = l0;
    rep.area_ratio = rep.area / (pi * l0 * l0);
    rep.bound_check = rep.area <= pi * l0 * l0 * (1.0 + 1e-4);
    rep.radius_below_critical = rep.min_osculating_radius <= rep.critical->upper * (1.0 + 1e-9);
    if (!rep.bound_check) rep.failures.push_back(describe("A > pi l0^2", l0));
    if (!rep.radius_below_critical) rep.failures.push_back(describe("l0 below min radius", l0));
    for (const auto& s : rep.critical->curve) {
      if (s.wheelbase < rep.critical->lower && s.cls == MonodromyClass::elliptic) {
        rep.failures.push_back(describe("elliptic sample below l0", s.wheelbase));
      }
    }
    try {
      rep.defect = defect_bound(track, rep.critical->transitions.front().lower, options.steps_per_pass);
      if (!rep.defect->holds) rep.failures.push_back(describe("defect bound violated", rep.defect->wheelbase));
    } catch (const std::exception& e) {
      rep.failures.push_back(e.what());
    }
  }
  rep.passed = rep.failures.empty();
  return rep;
}

std::vector<RearTrack> nested_rear_tracks(const FrontTrack& track,
                                          const std::vector<double>& wheelbases,
                                          int steps_per_pass) {
  std::vector<std::optional<RearTrack>> slots(wheelbases.size());
  detail::parallel_for(wheelbases.size(), [&](std::size_t i) {
    BikeParams p;
    p.wheelbase = wheelbases[i];
    p.steps_per_pass = steps_per_pass;
    const auto m = monodromy(track, p);
    if (!m.identity && m.cls == MonodromyClass::elliptic) return;
    const double angle = m.fixed.empty() ? 0.0 : m.fixed.front().angle;
    slots[i] = rear_track(integrate_steering(track, p, angle));
  });
  std::vector<RearTrack> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace tractrix
