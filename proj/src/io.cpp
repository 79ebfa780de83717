#include "tractrix/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "tractrix/error.hpp"

namespace tractrix {

void to_json(json& j, const Vec2& v) { j = json::array({v.x, v.y}); }

void from_json(const json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("a point is a two-element array [x, y]");
  v = {j.at(0).get<double>(), j.at(1).get<double>()};
}

// ---------------------------------------------------------------------------
// CurveSpec

void to_json(json& j, const CurveSpec& s) {
  j = json::object();
  j["kind"] = std::string(to_string(s.kind));
  switch (s.kind) {
    case CurveKind::circle:
      j["r"] = s.radius;
      j["center"] = s.center;
      j["rotation"] = s.rotation;
      break;
    case CurveKind::ellipse:
      j["a"] = s.semi_major;
      j["b"] = s.semi_minor;
      j["center"] = s.center;
      j["rotation"] = s.rotation;
      break;
    case CurveKind::fourier_support:
      j["cos"] = s.cos_coeffs;
      j["sin"] = s.sin_coeffs;
      j["center"] = s.center;
      j["rotation"] = s.rotation;
      break;
    case CurveKind::polyline:
      j["points"] = s.points;
      j["closed"] = s.closed;
      j["fillet"] = s.fillet_radius;
      break;
    case CurveKind::samples:
      j["points"] = s.points;
      j["closed"] = s.closed;
      break;
    case CurveKind::segment:
      j["points"] = s.points;
      break;
    case CurveKind::geodesic_circle:
      j["r"] = s.radius;
      break;
  }
  j["geometry"] = std::string(to_string(s.geometry));
  j["traversals"] = s.traversals;
  j["orientation"] = s.orientation;
}

void from_json(const json& j, CurveSpec& s) {
  if (!j.is_object()) throw ValidationError("curve spec must be a JSON object");
  s = CurveSpec{};
  s.kind = curve_kind_from_string(j.at("kind").get<std::string>());
  const auto opt = [&j](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  const auto need = [&j](const char* key, auto& field) {
    if (!j.contains(key)) throw ValidationError(std::string("curve spec needs '") + key + "'");
    j.at(key).get_to(field);
  };
  switch (s.kind) {
    case CurveKind::circle:
    case CurveKind::geodesic_circle: need("r", s.radius); break;
    case CurveKind::ellipse:
      need("a", s.semi_major);
      need("b", s.semi_minor);
      break;
    case CurveKind::fourier_support:
      need("cos", s.cos_coeffs);
      opt("sin", s.sin_coeffs);
      break;
    case CurveKind::polyline:
    case CurveKind::samples:
    case CurveKind::segment: need("points", s.points); break;
  }
  opt("center", s.center);
  opt("rotation", s.rotation);
  opt("closed", s.closed);
  opt("fillet", s.fillet_radius);
  opt("traversals", s.traversals);
  opt("orientation", s.orientation);
  if (j.contains("geometry")) s.geometry = geometry_from_string(j.at("geometry").get<std::string>());
}

CurveSpec parse_curve_spec(const std::string& text) {
  try {
    return json::parse(text).get<CurveSpec>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed curve spec: ") + e.what());
  }
}

CurveSpec read_curve_spec(const std::filesystem::path& path) {
  return parse_curve_spec(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Monodromy

void to_json(json& j, const MoebiusMap& m) { j = m.entries(); }

void from_json(const json& j, MoebiusMap& m) {
  const auto e = j.get<std::array<double, 4>>();
  m = MoebiusMap::from_unimodular(e[0], e[1], e[2], e[3]);
}

void to_json(json& j, const FixedPoint& f) {
  j = {{"angle", f.angle}, {"multiplier", f.multiplier}};
}

void from_json(const json& j, FixedPoint& f) {
  j.at("angle").get_to(f.angle);
  j.at("multiplier").get_to(f.multiplier);
}

void to_json(json& j, const MonodromyReport& r) {
  j = {{"matrix", r.map},
       {"method", std::string(to_string(r.method))},
       {"class", std::string(to_string(r.cls))},
       {"identity", r.identity},
       {"trace", r.trace},
       {"fixed_points", r.fixed},
       {"rear_lengths", r.rear_lengths},
       {"fit_residual", r.fit_residual},
       {"parabolic_tolerance", r.parabolic_tolerance},
       {"wheelbase", r.wheelbase},
       {"geometry", std::string(to_string(r.geometry))},
       {"steps", r.steps}};
}

void from_json(const json& j, MonodromyReport& r) {
  j.at("matrix").get_to(r.map);
  r.method = monodromy_method_from_string(j.at("method").get<std::string>());
  r.cls = monodromy_class_from_string(j.at("class").get<std::string>());
  j.at("identity").get_to(r.identity);
  j.at("trace").get_to(r.trace);
  j.at("fixed_points").get_to(r.fixed);
  j.at("rear_lengths").get_to(r.rear_lengths);
  j.at("fit_residual").get_to(r.fit_residual);
  j.at("parabolic_tolerance").get_to(r.parabolic_tolerance);
  j.at("wheelbase").get_to(r.wheelbase);
  r.geometry = geometry_from_string(j.at("geometry").get<std::string>());
  j.at("steps").get_to(r.steps);
}

// ---------------------------------------------------------------------------
// Planimeter

void to_json(json& j, const PlanimeterReading& r) {
  j = {{"wheelbase", r.wheelbase},
       {"base_param", r.base_param},
       {"base_point", r.base_point},
       {"start", std::string(to_string(r.start))},
       {"deflection", r.deflection},
       {"estimate", r.estimate},
       {"exact_area", r.exact_area},
       {"mean_square_radius", r.mean_square_radius},
       {"correction_estimate", r.correction_estimate},
       {"residual_error", r.residual_error},
       {"chisel_area", r.chisel_area},
       {"identity_gap", r.identity_gap}};
}

void from_json(const json& j, PlanimeterReading& r) {
  j.at("wheelbase").get_to(r.wheelbase);
  j.at("base_param").get_to(r.base_param);
  j.at("base_point").get_to(r.base_point);
  r.start = planimeter_start_from_string(j.at("start").get<std::string>());
  j.at("deflection").get_to(r.deflection);
  j.at("estimate").get_to(r.estimate);
  j.at("exact_area").get_to(r.exact_area);
  j.at("mean_square_radius").get_to(r.mean_square_radius);
  j.at("correction_estimate").get_to(r.correction_estimate);
  j.at("residual_error").get_to(r.residual_error);
  j.at("chisel_area").get_to(r.chisel_area);
  j.at("identity_gap").get_to(r.identity_gap);
}

void to_json(json& j, const ErrorScanRow& r) {
  j = {{"ell", r.wheelbase},       {"base_param", r.base_param},
       {"start", std::string(to_string(r.start))},
       {"alpha", r.deflection},    {"estimate", r.estimate},
       {"exact", r.exact},         {"correction", r.correction},
       {"residual", r.residual}};
}

void from_json(const json& j, ErrorScanRow& r) {
  j.at("ell").get_to(r.wheelbase);
  j.at("base_param").get_to(r.base_param);
  r.start = planimeter_start_from_string(j.at("start").get<std::string>());
  j.at("alpha").get_to(r.deflection);
  j.at("estimate").get_to(r.estimate);
  j.at("exact").get_to(r.exact);
  j.at("correction").get_to(r.correction);
  j.at("residual").get_to(r.residual);
}

// ---------------------------------------------------------------------------
// Menzin

void to_json(json& j, const ClassificationSample& s) {
  j = {{"ell", s.wheelbase}, {"trace", s.trace}, {"class", std::string(to_string(s.cls))}};
}

void from_json(const json& j, ClassificationSample& s) {
  j.at("ell").get_to(s.wheelbase);
  j.at("trace").get_to(s.trace);
  s.cls = monodromy_class_from_string(j.at("class").get<std::string>());
}

void to_json(json& j, const Transition& t) {
  j = {{"lower", t.lower},
       {"upper", t.upper},
       {"below", std::string(to_string(t.below))},
       {"above", std::string(to_string(t.above))}};
}

void from_json(const json& j, Transition& t) {
  j.at("lower").get_to(t.lower);
  j.at("upper").get_to(t.upper);
  t.below = monodromy_class_from_string(j.at("below").get<std::string>());
  t.above = monodromy_class_from_string(j.at("above").get<std::string>());
}

void to_json(json& j, const CriticalLength& c) {
  j = {{"ell0", c.wheelbase},
       {"lower", c.lower},
       {"upper", c.upper},
       {"bisections", c.bisections},
       {"classification_curve", c.curve},
       {"transitions", c.transitions}};
}

void from_json(const json& j, CriticalLength& c) {
  j.at("ell0").get_to(c.wheelbase);
  j.at("lower").get_to(c.lower);
  j.at("upper").get_to(c.upper);
  j.at("bisections").get_to(c.bisections);
  j.at("classification_curve").get_to(c.curve);
  j.at("transitions").get_to(c.transitions);
}

void to_json(json& j, const DefectBound& d) {
  j = {{"ell", d.wheelbase},
       {"front_length", d.front_length},
       {"front_area", d.front_area},
       {"defect", d.defect},
       {"rear_area", d.rear_area},
       {"rear_area_direct", d.rear_area_direct},
       {"rear_turning", d.rear_turning},
       {"rear_length", d.rear_length},
       {"fixed_angle", d.fixed_angle},
       {"bound", d.bound},
       {"holds", d.holds}};
}

void from_json(const json& j, DefectBound& d) {
  j.at("ell").get_to(d.wheelbase);
  j.at("front_length").get_to(d.front_length);
  j.at("front_area").get_to(d.front_area);
  j.at("defect").get_to(d.defect);
  j.at("rear_area").get_to(d.rear_area);
  j.at("rear_area_direct").get_to(d.rear_area_direct);
  j.at("rear_turning").get_to(d.rear_turning);
  j.at("rear_length").get_to(d.rear_length);
  j.at("fixed_angle").get_to(d.fixed_angle);
  j.at("bound").get_to(d.bound);
  j.at("holds").get_to(d.holds);
}

void to_json(json& j, const StageCheck& s) {
  j = {{"ell", s.wheelbase},
       {"trace", s.trace},
       {"class", std::string(to_string(s.cls))},
       {"passed", s.passed}};
}

void from_json(const json& j, StageCheck& s) {
  j.at("ell").get_to(s.wheelbase);
  j.at("trace").get_to(s.trace);
  s.cls = monodromy_class_from_string(j.at("class").get<std::string>());
  j.at("passed").get_to(s.passed);
}

void to_json(json& j, const MenzinReport& r) {
  j = {{"area", r.area},
       {"perimeter", r.perimeter},
       {"min_osculating_radius", r.min_osculating_radius},
       {"small_ell_check", r.small},
       {"large_ell_check", r.large},
       {"ell0", r.critical_length},
       {"area_ratio", r.area_ratio},
       {"bound_check", r.bound_check},
       {"radius_below_critical", r.radius_below_critical},
       {"passed", r.passed},
       {"failures", r.failures}};
  j["critical"] = r.critical ? json(*r.critical) : json(nullptr);
  j["defect_bound"] = r.defect ? json(*r.defect) : json(nullptr);
}

void from_json(const json& j, MenzinReport& r) {
  j.at("area").get_to(r.area);
  j.at("perimeter").get_to(r.perimeter);
  j.at("min_osculating_radius").get_to(r.min_osculating_radius);
  j.at("small_ell_check").get_to(r.small);
  j.at("large_ell_check").get_to(r.large);
  j.at("ell0").get_to(r.critical_length);
  j.at("area_ratio").get_to(r.area_ratio);
  j.at("bound_check").get_to(r.bound_check);
  j.at("radius_below_critical").get_to(r.radius_below_critical);
  j.at("passed").get_to(r.passed);
  j.at("failures").get_to(r.failures);
  r.critical.reset();
  r.defect.reset();
  if (!j.at("critical").is_null()) r.critical = j.at("critical").get<CriticalLength>();
  if (!j.at("defect_bound").is_null()) r.defect = j.at("defect_bound").get<DefectBound>();
}

// ---------------------------------------------------------------------------
// Curved geometries and loops

void to_json(json& j, const HpzReport& r) {
  j = {{"geometry", std::string(to_string(r.geometry))},
       {"ell", r.wheelbase},
       {"area", r.area},
       {"threshold", r.threshold},
       {"convex", r.convex},
       {"applicable", r.applicable},
       {"reason", r.reason},
       {"trace", r.trace},
       {"class", std::string(to_string(r.cls))},
       {"identity", r.identity},
       {"passed", r.passed}};
}

void from_json(const json& j, HpzReport& r) {
  r.geometry = geometry_from_string(j.at("geometry").get<std::string>());
  j.at("ell").get_to(r.wheelbase);
  j.at("area").get_to(r.area);
  j.at("threshold").get_to(r.threshold);
  j.at("convex").get_to(r.convex);
  j.at("applicable").get_to(r.applicable);
  j.at("reason").get_to(r.reason);
  j.at("trace").get_to(r.trace);
  r.cls = monodromy_class_from_string(j.at("class").get<std::string>());
  j.at("identity").get_to(r.identity);
  j.at("passed").get_to(r.passed);
}

void to_json(json& j, const LoopIdentity& l) {
  j = {{"front_area", l.front_area}, {"rear_area", l.rear_area},
       {"lambda_integral", l.lambda_integral}, {"winding", l.winding},
       {"lhs", l.lhs},             {"rhs", l.rhs}};
}

void from_json(const json& j, LoopIdentity& l) {
  j.at("front_area").get_to(l.front_area);
  j.at("rear_area").get_to(l.rear_area);
  j.at("lambda_integral").get_to(l.lambda_integral);
  j.at("winding").get_to(l.winding);
  j.at("lhs").get_to(l.lhs);
  j.at("rhs").get_to(l.rhs);
}

// ---------------------------------------------------------------------------
// CSV

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

template <class... Ts>
void csv_row(std::string& out, const Ts&... cells) {
  bool first = true;
  const auto put = [&](const auto& c) {
    if (!first) out += ',';
    first = false;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(c)>>) {
      out += format_number(static_cast<double>(c));
    } else {
      out += c;
    }
  };
  (put(cells), ...);
  out += '\n';
}

}  // namespace

std::string rear_track_csv(const SteeringSolution& solution, const RearTrack& rear) {
  std::string out = "t,x,y,alpha,cos_alpha\n";
  for (std::size_t i = 0; i < rear.t.size(); ++i) {
    csv_row(out, rear.t[i], rear.points[i].x, rear.points[i].y, solution.alpha()[i],
            rear.cos_alpha[i]);
  }
  return out;
}

std::string error_scan_csv(const std::vector<ErrorScanRow>& rows) {
  std::string out = "ell,base_param,alpha,estimate,exact,correction,residual,start\n";
  for (const auto& r : rows) {
    csv_row(out, r.wheelbase, r.base_param, r.deflection, r.estimate, r.exact, r.correction,
            r.residual, std::string(to_string(r.start)));
  }
  return out;
}

std::string classification_csv(const std::vector<ClassificationSample>& curve) {
  std::string out = "ell,trace,class\n";
  for (const auto& s : curve) csv_row(out, s.wheelbase, s.trace, std::string(to_string(s.cls)));
  return out;
}

std::string hcurve_csv(const HCurve& curve, const std::vector<double>& alpha) {
  if (!alpha.empty() && alpha.size() != curve.t.size()) {
    throw ValidationError("alpha column length does not match the curve");
  }
  std::string out = alpha.empty() ? "t,x0,x1,x2\n" : "t,x0,x1,x2,alpha\n";
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const auto& p = curve.points[i];
    if (alpha.empty()) {
      csv_row(out, curve.t[i], p[0], p[1], p[2]);
    } else {
      csv_row(out, curve.t[i], p[0], p[1], p[2], alpha[i]);
    }
  }
  return out;
}

ConfigLoop parse_config_loop_csv(const std::string& text, double wheelbase) {
  std::istringstream in(text);
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    return cells;
  };
  if (!std::getline(in, line)) throw ValidationError("loop CSV is empty");
  const auto header = split(line);
  int ix = -1, iy = -1, it = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[i] == "x") ix = i;
    if (header[i] == "y") iy = i;
    if (header[i] == "theta") it = i;
  }
  if (ix < 0 || iy < 0 || it < 0) throw ValidationError("loop CSV needs columns x,y,theta");
  ConfigLoop loop;
  loop.wheelbase = wheelbase;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    const auto num = [&](int idx) {
      if (idx >= static_cast<int>(cells.size())) {
        throw ValidationError("loop CSV row " + std::to_string(row) + " is short");
      }
      double v = 0.0;
      const auto& c = cells[idx];
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        throw ValidationError("loop CSV row " + std::to_string(row) + ": bad number '" + c + "'");
      }
      return v;
    };
    loop.x.push_back(num(ix));
    loop.y.push_back(num(iy));
    loop.theta.push_back(num(it));
  }
  return loop;
}

// ---------------------------------------------------------------------------
// Files

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ValidationError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ValidationError("cannot replace " + path.string());
  }
}

}  // namespace tractrix
