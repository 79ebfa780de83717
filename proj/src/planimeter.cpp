#include "tractrix/planimeter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "tractrix/dynamics.hpp"
#include "tractrix/error.hpp"

namespace tractrix {

using std::numbers::pi;

std::string_view to_string(PlanimeterStart s) {
  return s == PlanimeterStart::boundary ? "boundary" : "centroid";
}

PlanimeterStart planimeter_start_from_string(std::string_view name) {
  if (name == "boundary") return PlanimeterStart::boundary;
  if (name == "centroid") return PlanimeterStart::centroid;
  throw ValidationError("unknown planimeter start '" + std::string(name) + "'");
}

Vec2 centroid(const FrontTrack& track) {
  const auto m = area_moments(track);
  if (std::abs(m.area) < 1e-14 * std::pow(track.pass_length(), 2)) {
    throw ValidationError("centroid of a region with zero area");
  }
  return m.centroid;
}

namespace {

struct LegResult {
  double psi_end;
  double chisel_area;  // 1/2 integral of cross(R - ref, dR)
};

// Tracer runs along `leg` with the rod (chisel -> tracer) initially at angle
// psi. Appends the sampled chisel and tracer positions.
LegResult run_leg(const FrontTrack& leg, const BikeParams& params, double psi, Vec2 ref,
                  std::vector<Vec2>& chisel, std::vector<Vec2>& tracer) {
  const double l = params.wheelbase;
  const auto sol = integrate_steering(leg, params, leg.tangent_angle(0.0) - psi);
  const auto& t = sol.times();
  const auto& alpha = sol.alpha();
  std::vector<double> integrand(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double frame = sol.frame_angle(i);
    const Vec2 u = unit(frame);
    const Vec2 f = leg.position(t[i]);
    const Vec2 r = f - l * u;
    integrand[i] = 0.5 * cross(r - ref, std::cos(alpha[i]) * u);
    if (!chisel.empty() && i == 0) continue;
    chisel.push_back(r);
    tracer.push_back(f);
  }
  return {leg.tangent_angle(leg.total_length()) - alpha.back(), sol.integrate(integrand)};
}

}  // namespace

PlanimeterReading measure(const FrontTrack& track, double wheelbase, double base_param,
                          const PlanimeterOptions& options) {
  if (!track.closed()) throw ValidationError("planimeter needs a closed track");
  if (track.geometry() != Geometry::euclidean) {
    throw ValidationError("planimeter works in the Euclidean plane only");
  }
  if (!(wheelbase > 0.0)) throw ValidationError("wheelbase must be positive");
  if (options.steps_per_pass < 2) throw ValidationError("steps_per_pass must be >= 2");
  if (!is_simple(track)) throw ValidationError("planimeter needs a simple closed track");

  const auto moments = area_moments(track);
  const double l = wheelbase;
  const double base = std::fmod(std::fmod(base_param, track.total_length()) + track.total_length(),
                                track.total_length());
  const FrontTrack loop = track.rebased(base);
  const Vec2 b = loop.position(0.0);
  const Vec2 c = moments.centroid;
  const Vec2 ref = c;

  PlanimeterReading out;
  out.wheelbase = l;
  out.base_param = base;
  out.base_point = b;
  out.start = options.start;
  out.exact_area = moments.area;
  out.mean_square_radius = moments.mean_square_radius;

  BikeParams params;
  params.wheelbase = l;
  params.steps_per_pass = options.steps_per_pass;

  std::vector<FrontTrack> legs;
  double psi0 = 0.0;
  if (options.start == PlanimeterStart::centroid) {
    if (norm(b - c) < 1e-12 * track.pass_length()) {
      throw ValidationError("base point coincides with the centroid");
    }
    legs.push_back(make_segment(c, b));
    legs.push_back(loop);
    legs.push_back(make_segment(b, c));
    psi0 = std::atan2(b.y - c.y, b.x - c.x);
  } else {
    legs.push_back(loop);
    const double outward = moments.area > 0.0 ? -0.5 * pi : 0.5 * pi;
    psi0 = loop.tangent_angle(0.0) + outward;
  }
  if (options.initial_direction) psi0 = *options.initial_direction;

  double psi = psi0;
  double chisel_area = 0.0;
  for (const auto& leg : legs) {
    const auto r = run_leg(leg, params, psi, ref, out.chisel_path, out.tracer_path);
    psi = r.psi_end;
    chisel_area += r.chisel_area;
  }

  const double total_turn = psi - psi0;
  out.deflection = std::remainder(total_turn, 2.0 * pi);
  if (out.deflection == -pi) out.deflection = pi;
  const double winding = std::round((total_turn - out.deflection) / (2.0 * pi));

  // Close the chisel path by rotating the rod about the tracer, which is back
  // at its starting point, from psi back to psi - deflection.
  const Vec2 p = out.tracer_path.front() - ref;
  const double pe = psi, pa = psi - out.deflection;
  chisel_area += 0.5 * (-l * p.x * (std::sin(pa) - std::sin(pe)) +
                        l * p.y * (std::cos(pa) - std::cos(pe)) + l * l * (pa - pe));

  out.chisel_area = chisel_area;
  out.estimate = out.deflection * l * l;
  out.correction_estimate = out.exact_area * (1.0 + out.mean_square_radius / (2.0 * l * l));
  out.residual_error = out.estimate - out.correction_estimate;
  out.identity_gap = out.estimate + pi * l * l * winding - (out.exact_area - out.chisel_area);
  return out;
}

std::vector<ErrorScanRow> error_scan(const FrontTrack& track, const std::vector<double>& wheelbases,
                                     const std::vector<double>& bases, int steps_per_pass) {
  if (wheelbases.empty() || bases.empty()) throw ValidationError("error scan needs ell and base values");
  struct Cell {
    double ell;
    double base;
    PlanimeterStart start;
  };
  std::vector<Cell> cells;
  for (double ell : wheelbases) {
    for (double base : bases) cells.push_back({ell, base, PlanimeterStart::boundary});
    cells.push_back({ell, bases.front(), PlanimeterStart::centroid});
  }
  std::vector<ErrorScanRow> rows(cells.size());
  detail::parallel_for(cells.size(), [&](std::size_t i) {
    PlanimeterOptions opt;
    opt.start = cells[i].start;
    opt.steps_per_pass = steps_per_pass;
    const auto r = measure(track, cells[i].ell, cells[i].base, opt);
    rows[i] = {r.wheelbase,  r.base_param, r.start, r.deflection, r.estimate,
               r.exact_area, r.correction_estimate, r.residual_error};
  });
  return rows;
}

}  // namespace tractrix
