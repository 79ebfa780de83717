#include "tractrix/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <functional>
#include <memory>
#include <iostream>
#include <numbers>
#include <optional>

#include "tractrix/error.hpp"
#include "tractrix/io.hpp"
#include "tractrix/random.hpp"
#include "tractrix/svg.hpp"

namespace tractrix::cli {

namespace {

using std::numbers::pi;

struct Outputs {
  std::string json;
  std::string csv;
  std::string svg;
};

void add_outputs(CLI::App* cmd, Outputs& o, bool csv, bool svg) {
  cmd->add_option("--json", o.json, "Also write the JSON report to this file");
  if (csv) cmd->add_option("--csv", o.csv, "Write the CSV table to this file");
  if (svg) cmd->add_option("--svg", o.svg, "Write the SVG figure to this file");
}

void emit(std::ostream& out, const Outputs& o, const json& report) {
  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!o.json.empty()) write_file_atomic(o.json, text);
}

FrontTrack load_track(const std::string& path) { return make_curve(read_curve_spec(path)); }

// ---------------------------------------------------------------------------

struct TraceArgs {
  std::string input;
  double ell = 1.0;
  double alpha0 = 0.0;
  double anchor = 0.0;
  int steps = 4096;
  Outputs out;
};

int do_trace(const TraceArgs& a, std::ostream& out) {
  const FrontTrack track = load_track(a.input);
  BikeParams p;
  p.wheelbase = a.ell;
  p.steps_per_pass = a.steps;
  const auto sol = integrate_steering(track, p, a.alpha0, a.anchor);
  const auto rear = rear_track(sol);
  json j = {{"wheelbase", a.ell},
            {"alpha0", a.alpha0},
            {"anchor", a.anchor},
            {"front_length", track.total_length()},
            {"initial_alpha", sol.initial_alpha()},
            {"final_alpha", sol.final_alpha()},
            {"signed_rear_length", rear.signed_length},
            {"cusp_times", rear.cusp_times},
            {"rear_closed", rear.closed},
            {"area_between", area_between(sol)}};
  if (!a.out.csv.empty()) write_file_atomic(a.out.csv, rear_track_csv(sol, rear));
  if (!a.out.svg.empty()) write_file_atomic(a.out.svg, rear_track_svg(sol, rear));
  emit(out, a.out, j);
  return kOk;
}

struct MonodromyArgs {
  std::string input;
  double ell = 1.0;
  int steps = 4096;
  Outputs out;
};

int do_monodromy(const MonodromyArgs& a, std::ostream& out) {
  const FrontTrack track = load_track(a.input);
  BikeParams p;
  p.wheelbase = a.ell;
  p.geometry = track.geometry();
  p.steps_per_pass = a.steps;
  emit(out, a.out, json(monodromy(track, p)));
  return kOk;
}

struct PlanimeterArgs {
  std::string input;
  std::vector<double> ells{10.0};
  std::vector<double> bases{0.0};
  std::string start = "centroid";
  std::optional<double> direction;
  int steps = 4096;
  Outputs out;
};

int do_planimeter(const PlanimeterArgs& a, std::ostream& out) {
  const FrontTrack track = load_track(a.input);
  if (a.ells.size() == 1 && a.bases.size() == 1) {
    PlanimeterOptions opt;
    opt.start = planimeter_start_from_string(a.start);
    opt.initial_direction = a.direction;
    opt.steps_per_pass = a.steps;
    const auto r = measure(track, a.ells.front(), a.bases.front(), opt);
    if (!a.out.svg.empty()) write_file_atomic(a.out.svg, planimeter_svg(r));
    if (!a.out.csv.empty()) {
      const ErrorScanRow row{r.wheelbase, r.base_param, r.start, r.deflection,
                             r.estimate, r.exact_area, r.correction_estimate, r.residual_error};
      write_file_atomic(a.out.csv, error_scan_csv({row}));
    }
    emit(out, a.out, json(r));
    return kOk;
  }
  const auto rows = error_scan(track, a.ells, a.bases, a.steps);
  if (!a.out.csv.empty()) write_file_atomic(a.out.csv, error_scan_csv(rows));
  emit(out, a.out, json{{"rows", rows}});
  return kOk;
}

struct MenzinArgs {
  std::string input;
  MenzinOptions options;
  Outputs out;
};

int do_menzin(const MenzinArgs& a, std::ostream& out) {
  const FrontTrack track = load_track(a.input);
  const auto rep = menzin_verify(track, a.options);
  if (!a.out.csv.empty() && rep.critical) {
    write_file_atomic(a.out.csv, classification_csv(rep.critical->curve));
  }
  if (!a.out.svg.empty() && rep.critical) {
    std::vector<double> ells;
    for (double f : {0.2, 0.4, 0.6, 0.8, 0.95}) ells.push_back(f * rep.critical->lower);
    write_file_atomic(a.out.svg,
                      nested_tracks_svg(track, nested_rear_tracks(track, ells, a.options.steps_per_pass)));
  }
  emit(out, a.out, json(rep));
  return rep.passed ? kOk : kNumerical;
}

struct DevelopArgs {
  std::string input;
  std::optional<double> curvature;
  double length = 0.0;
  int steps = 4096;
  std::optional<double> star;
  Outputs out;
};

int do_develop(const DevelopArgs& a, std::ostream& out) {
  HCurve curve;
  std::function<double(double)> k_at;
  if (!a.input.empty()) {
    if (a.curvature) throw ValidationError("give either --input or --curvature, not both");
    auto track = std::make_shared<FrontTrack>(load_track(a.input));
    curve = develop_hyperbolic(*track, a.steps);
    k_at = [track](double t) { return track->curvature(t); };
  } else {
    if (!a.curvature) throw ValidationError("develop needs --input or --curvature with --length");
    if (!(a.length > 0.0)) throw ValidationError("--length must be positive");
    const double k = *a.curvature;
    k_at = [k](double) { return k; };
    curve = develop_hyperbolic(k_at, a.length, a.steps);
  }
  json j = {{"length", curve.t.back()},
            {"steps", static_cast<int>(curve.t.size()) - 1},
            {"point_gap", curve.point_gap()},
            {"frame_gap", curve.frame_gap()},
            {"frame_defect", curve.frame_defect()},
            {"closes_c1", curve.point_gap() < 1e-4 && curve.frame_gap() < 1e-4},
            {"end_point", curve.points.back()}};
  std::vector<double> alpha;
  if (a.star) {
    alpha = stargazing_angle(curve, ideal_point(*a.star));
    // Residual of alpha' = k - sin(alpha) at mid-grid points; alpha there
    // comes from the four-point interpolation stencil.
    double worst = 0.0;
    for (std::size_t i = 1; i + 2 < alpha.size(); ++i) {
      const double h = curve.t[i + 1] - curve.t[i];
      const double mid = (-alpha[i - 1] + 9 * alpha[i] + 9 * alpha[i + 1] - alpha[i + 2]) / 16;
      const double d = (alpha[i + 1] - alpha[i]) / h;
      worst = std::max(worst, std::abs(d - k_at(curve.t[i] + 0.5 * h) + std::sin(mid)));
    }
    j["star"] = *a.star;
    j["initial_alpha"] = alpha.front();
    j["final_alpha"] = alpha.back();
    j["stargazing_residual"] = worst;
  }
  if (!a.out.csv.empty()) write_file_atomic(a.out.csv, hcurve_csv(curve, alpha));
  if (!a.out.svg.empty()) write_file_atomic(a.out.svg, poincare_svg(curve));
  emit(out, a.out, j);
  return kOk;
}

struct HpzArgs {
  std::string input;
  double ell = 0.5;
  int steps = 4096;
  Outputs out;
};

int do_hpz(const HpzArgs& a, std::ostream& out) {
  const auto r = hpz_verify(load_track(a.input), a.ell, a.steps);
  emit(out, a.out, json(r));
  return r.passed ? kOk : kNumerical;
}

struct LoopArgs {
  std::string input;
  double ell = 1.0;
  int random = 0;
  Outputs out;
};

int do_loopcheck(const LoopArgs& a, std::uint64_t seed, std::ostream& out) {
  if (a.input.empty() == (a.random == 0)) {
    throw ValidationError("loopcheck needs exactly one of --input or --random");
  }
  if (!a.input.empty()) {
    emit(out, a.out, json(loop_identity(parse_config_loop_csv(read_text_file(a.input), a.ell))));
    return kOk;
  }
  if (a.random < 0) throw ValidationError("--random must be positive");
  Rng rng(seed);
  json rows = json::array();
  for (int i = 0; i < a.random; ++i) rows.push_back(json(loop_identity(random_config_loop(rng, a.ell))));
  emit(out, a.out, json{{"seed", seed}, {"loops", rows}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bicycle tracks, monodromy, hatchet planimeter and critical wheelbase"};
  app.name(args.empty() ? "tractrix_lab" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for randomized sweeps")->capture_default_str();

  const auto positive = CLI::PositiveNumber;
  TraceArgs trace;
  auto* c_trace = app.add_subcommand("trace", "Rear track, cusps and signed length for one start");
  c_trace->add_option("--input", trace.input, "Curve spec JSON")->required();
  c_trace->add_option("--ell", trace.ell, "Wheelbase")->check(positive)->capture_default_str();
  c_trace->add_option("--alpha0", trace.alpha0, "Steering angle at the anchor (radians)")
      ->capture_default_str();
  c_trace->add_option("--anchor", trace.anchor, "Track parameter where alpha0 is imposed")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_trace->add_option("--steps", trace.steps, "RK4 steps per pass")->check(positive)->capture_default_str();
  add_outputs(c_trace, trace.out, true, true);

  MonodromyArgs mono;
  auto* c_mono = app.add_subcommand("monodromy", "Monodromy map, class and fixed points");
  c_mono->add_option("--input", mono.input, "Curve spec JSON")->required();
  c_mono->add_option("--ell", mono.ell, "Wheelbase")->check(positive)->capture_default_str();
  c_mono->add_option("--steps", mono.steps, "RK4 steps per pass")->check(positive)->capture_default_str();
  add_outputs(c_mono, mono.out, false, false);

  PlanimeterArgs plan;
  auto* c_plan = app.add_subcommand("planimeter", "Hatchet planimeter reading or error scan");
  c_plan->add_option("--input", plan.input, "Curve spec JSON")->required();
  c_plan->add_option("--ell", plan.ells, "Rod length(s), comma separated")
      ->delimiter(',')
      ->check(positive)
      ->capture_default_str();
  c_plan->add_option("--base", plan.bases, "Base parameter(s) on the track, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  c_plan->add_option("--start", plan.start, "centroid or boundary")
      ->check(CLI::IsMember({"centroid", "boundary"}))
      ->capture_default_str();
  c_plan->add_option("--direction", plan.direction, "Initial rod direction (radians)");
  c_plan->add_option("--steps", plan.steps, "RK4 steps per pass")->check(positive)->capture_default_str();
  add_outputs(c_plan, plan.out, true, true);

  MenzinArgs menz;
  auto* c_menz = app.add_subcommand("menzin", "Critical wheelbase and the area bound");
  c_menz->add_option("--input", menz.input, "Curve spec JSON")->required();
  c_menz->add_option("--ratio", menz.options.scan_ratio, "Scan ratio")
      ->check(CLI::Range(1.0000001, 10.0))
      ->capture_default_str();
  c_menz->add_option("--tol", menz.options.tolerance, "Bisection tolerance (0: 1e-6 sqrt(A/pi))")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_menz->add_option("--cap", menz.options.cap_factor, "Scan cap in units of sqrt(A/pi)")
      ->check(positive)
      ->capture_default_str();
  c_menz->add_option("--steps", menz.options.steps_per_pass, "RK4 steps per pass")
      ->check(positive)
      ->capture_default_str();
  add_outputs(c_menz, menz.out, true, true);

  DevelopArgs dev;
  auto* c_dev = app.add_subcommand("develop", "Develop a curvature function into the hyperbolic plane");
  c_dev->add_option("--input", dev.input, "Curve spec JSON supplying k(t)");
  c_dev->add_option("--curvature", dev.curvature, "Constant curvature instead of --input");
  c_dev->add_option("--length", dev.length, "Length for --curvature");
  c_dev->add_option("--steps", dev.steps, "RK4 steps per pass")->check(positive)->capture_default_str();
  c_dev->add_option("--star", dev.star, "Ideal point direction for the stargazing angle");
  add_outputs(c_dev, dev.out, true, true);

  HpzArgs hpz;
  auto* c_hpz = app.add_subcommand("hpz", "Area criterion for hyperbolic monodromy on S^2 or H^2");
  c_hpz->add_option("--input", hpz.input, "Geodesic-circle spec JSON")->required();
  c_hpz->add_option("--ell", hpz.ell, "Wheelbase")->check(positive)->capture_default_str();
  c_hpz->add_option("--steps", hpz.steps, "RK4 steps per pass")->check(positive)->capture_default_str();
  add_outputs(c_hpz, hpz.out, false, false);

  LoopArgs loop;
  auto* c_loop = app.add_subcommand("loopcheck", "Area identity on configuration-space loops");
  c_loop->add_option("--input", loop.input, "CSV with columns x,y,theta");
  c_loop->add_option("--ell", loop.ell, "Segment length")->check(positive)->capture_default_str();
  c_loop->add_option("--random", loop.random, "Check this many random loops instead (uses --seed)");
  add_outputs(c_loop, loop.out, false, false);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (c_trace->parsed()) return do_trace(trace, out);
    if (c_mono->parsed()) return do_monodromy(mono, out);
    if (c_plan->parsed()) return do_planimeter(plan, out);
    if (c_menz->parsed()) return do_menzin(menz, out);
    if (c_dev->parsed()) return do_develop(dev, out);
    if (c_hpz->parsed()) return do_hpz(hpz, out);
    if (c_loop->parsed()) return do_loopcheck(loop, seed, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  err << app.help();
  return kValidation;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tractrix::cli
