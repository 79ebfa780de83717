#include "tractrix/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

namespace {

struct Hom {
  double u, v;
};

Hom homogeneous(double alpha) { return {std::sin(0.5 * alpha), std::cos(0.5 * alpha)}; }

double angle_of(double u, double v) {
  double a = 2.0 * std::atan2(u, v);
  a = std::fmod(a, 2.0 * pi);
  if (a < 0.0) a += 2.0 * pi;
  if (a >= 2.0 * pi) a = 0.0;
  return a;
}

double wrapped_difference(double a, double b) {
  return std::remainder(a - b, 2.0 * pi);
}

bool coincide(double a, double b) { return std::abs(std::sin(0.5 * (a - b))) < 1e-12; }

}  // namespace

MoebiusMap MoebiusMap::from_matrix(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw ValidationError("Moebius matrix must have positive determinant");
  }
  double s = 1.0 / std::sqrt(det);
  if (a + d < 0.0) s = -s;
  return MoebiusMap(a * s, b * s, c * s, d * s);
}

MoebiusMap MoebiusMap::from_unimodular(double a, double b, double c, double d) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d))) {
    throw NumericalError("non-finite Moebius matrix");
  }
  const double s = a + d < 0.0 ? -1.0 : 1.0;
  return MoebiusMap(a * s, b * s, c * s, d * s);
}

MoebiusMap MoebiusMap::rotation(double angle) {
  const double h = 0.5 * angle;
  return from_matrix(std::cos(h), std::sin(h), -std::sin(h), std::cos(h));
}

double MoebiusMap::apply(double alpha) const {
  const Hom p = homogeneous(alpha);
  return angle_of(a_ * p.u + b_ * p.v, c_ * p.u + d_ * p.v);
}

double MoebiusMap::derivative(double alpha) const {
  const Hom p = homogeneous(alpha);
  const double u = a_ * p.u + b_ * p.v, v = c_ * p.u + d_ * p.v;
  return 1.0 / (u * u + v * v);
}

double MoebiusMap::distance_to_identity() const { return distance_to(identity()); }

double MoebiusMap::distance_to(const MoebiusMap& o) const {
  // M and -M act identically; the sign convention is ambiguous when the trace is ~0.
  const double same = std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                                std::abs(d_ - o.d_)});
  const double flipped = std::max({std::abs(a_ + o.a_), std::abs(b_ + o.b_), std::abs(c_ + o.c_),
                                   std::abs(d_ + o.d_)});
  return std::min(same, flipped);
}

MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) {
  return MoebiusMap::from_matrix(l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
                                 l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_);
}

MoebiusMap moebius_from_three(const std::array<AnglePair, 3>& pairs) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (coincide(pairs[i].input, pairs[j].input)) throw ValidationError("coincident input angles");
      if (coincide(pairs[i].output, pairs[j].output)) {
        throw ValidationError("coincident output angles");
      }
    }
  }
  // Frame matrix [c1 p1, c2 p2] with c1 p1 + c2 p2 = p3; it sends the
  // standard triple (1:0), (0:1), (1:1) to (p1, p2, p3).
  const auto frame = [](double a1, double a2, double a3) {
    const Hom p1 = homogeneous(a1), p2 = homogeneous(a2), p3 = homogeneous(a3);
    const double det = p1.u * p2.v - p2.u * p1.v;
    const double c1 = (p3.u * p2.v - p2.u * p3.v) / det;
    const double c2 = (p1.u * p3.v - p3.u * p1.v) / det;
    return std::array<double, 4>{c1 * p1.u, c2 * p2.u, c1 * p1.v, c2 * p2.v};
  };
  const auto A = frame(pairs[0].input, pairs[1].input, pairs[2].input);
  const auto B = frame(pairs[0].output, pairs[1].output, pairs[2].output);
  const double det_a = A[0] * A[3] - A[1] * A[2];
  // inverse(A) * det_a
  const std::array<double, 4> Ai{A[3], -A[1], -A[2], A[0]};
  double m0 = B[0] * Ai[0] + B[1] * Ai[2];
  double m1 = B[0] * Ai[1] + B[1] * Ai[3];
  double m2 = B[2] * Ai[0] + B[3] * Ai[2];
  double m3 = B[2] * Ai[1] + B[3] * Ai[3];
  if (det_a < 0.0) {
    m0 = -m0;
    m1 = -m1;
    m2 = -m2;
    m3 = -m3;
  }
  if (!(m0 * m3 - m1 * m2 > 0.0)) {
    throw ValidationError("angle pairs describe an orientation-reversing map");
  }
  return MoebiusMap::from_matrix(m0, m1, m2, m3);
}

std::string_view to_string(MonodromyClass c) {
  switch (c) {
    case MonodromyClass::elliptic: return "elliptic";
    case MonodromyClass::parabolic: return "parabolic";
    case MonodromyClass::hyperbolic: return "hyperbolic";
  }
  return "parabolic";
}

MonodromyClass monodromy_class_from_string(std::string_view name) {
  for (auto c : {MonodromyClass::elliptic, MonodromyClass::parabolic, MonodromyClass::hyperbolic}) {
    if (to_string(c) == name) return c;
  }
  throw ValidationError("unknown monodromy class '" + std::string(name) + "'");
}

MonodromyClass classify(const MoebiusMap& map, double eps) {
  const double tr = std::abs(map.trace());
  if (tr < 2.0 - eps) return MonodromyClass::elliptic;
  if (std::abs(tr - 2.0) <= eps) return MonodromyClass::parabolic;
  return MonodromyClass::hyperbolic;
}

std::vector<FixedPoint> fixed_points(const MoebiusMap& map, double eps) {
  const auto cls = classify(map, eps);
  if (cls == MonodromyClass::elliptic) return {};
  const double a = map.a(), b = map.b(), c = map.c(), d = map.d();
  const auto eigvec_angle = [&](double lambda) {
    // Rows of (M - lambda I) annihilate the eigenvector; use the better-conditioned one.
    const double r1u = b, r1v = lambda - a;
    const double r2u = lambda - d, r2v = c;
    if (std::hypot(r1u, r1v) >= std::hypot(r2u, r2v)) return angle_of(r1u, r1v);
    return angle_of(r2u, r2v);
  };
  if (cls == MonodromyClass::parabolic) {
    if (map.distance_to_identity() <= eps) return {};
    const double angle = eigvec_angle(1.0);
    return {{angle, map.derivative(angle)}};
  }
  const double tr = map.trace();
  const double big = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
  const double small = 1.0 / big;
  const double attract = eigvec_angle(big);
  const double repel = eigvec_angle(small);
  return {{attract, map.derivative(attract)}, {repel, map.derivative(repel)}};
}

std::string_view to_string(MonodromyMethod m) {
  return m == MonodromyMethod::three_point_fit ? "three-point-fit" : "projective-flow";
}

MonodromyMethod monodromy_method_from_string(std::string_view name) {
  if (name == "three-point-fit") return MonodromyMethod::three_point_fit;
  if (name == "projective-flow") return MonodromyMethod::projective_flow;
  throw ValidationError("unknown monodromy method '" + std::string(name) + "'");
}

MoebiusMap fit_monodromy(const SteeringPropagator& propagator) {
  std::array<AnglePair, 3> pairs{};
  for (int i = 0; i < 3; ++i) {
    pairs[i] = {kProbeAngles[i], propagator.propagate(kProbeAngles[i])};
  }
  return moebius_from_three(pairs);
}

MonodromyReport monodromy(const FrontTrack& track, const BikeParams& params,
                          const MonodromyOptions& options) {
  BikeParams p = params;
  MonodromyReport r;
  r.wheelbase = params.wheelbase;
  r.geometry = params.geometry;
  for (int attempt = 0;; ++attempt) {
    const SteeringPropagator prop(track, p);
    std::array<AnglePair, 3> pairs{};
    double separation = 1.0;
    for (int i = 0; i < 3; ++i) pairs[i] = {kProbeAngles[i], prop.propagate(kProbeAngles[i])};
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        separation = std::min(separation,
                              std::abs(std::sin(0.5 * (pairs[i].output - pairs[j].output))));
      }
    }
    if (separation >= options.min_probe_separation) {
      r.map = moebius_from_three(pairs);
      r.method = MonodromyMethod::three_point_fit;
    } else {
      const auto m = prop.flow_matrix();
      r.map = MoebiusMap::from_unimodular(m[0], m[1], m[2], m[3]);
      r.method = MonodromyMethod::projective_flow;
    }
    const double predicted = r.map.apply(kValidationAngle);
    const double integrated = prop.propagate(kValidationAngle);
    r.fit_residual = std::abs(wrapped_difference(predicted, integrated));
    r.steps = prop.steps();
    if (r.fit_residual <= options.residual_target) break;
    if (attempt >= options.max_doublings) {
      throw NumericalError("monodromy fit residual " + std::to_string(r.fit_residual) +
                           " above target after " + std::to_string(attempt) + " doublings");
    }
    p.steps_per_pass *= 2;
  }
  r.trace = r.map.trace();
  r.parabolic_tolerance = std::max(options.parabolic_floor, 10.0 * r.fit_residual);
  r.identity = r.map.distance_to_identity() < options.identity_tolerance;
  if (r.identity) {
    r.cls = MonodromyClass::parabolic;
    return r;
  }
  r.cls = classify(r.map, r.parabolic_tolerance);
  r.fixed = fixed_points(r.map, r.parabolic_tolerance);
  for (const auto& fp : r.fixed) {
    // A repelling periodic orbit is attracting in reverse time: impose the
    // fixed angle at the end of the track and integrate backward.
    const double anchor = fp.multiplier > 1.0 ? track.total_length() : 0.0;
    r.rear_lengths.push_back(signed_rear_length(integrate_steering(track, p, fp.angle, anchor)));
  }
  return r;
}

}  // namespace tractrix
