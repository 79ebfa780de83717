#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tractrix/dynamics.hpp"
#include "tractrix/menzin.hpp"
#include "tractrix/moebius.hpp"
#include "tractrix/noneuclid.hpp"
#include "tractrix/planimeter.hpp"

namespace tractrix {

using json = nlohmann::json;

// JSON conversions, found by nlohmann::json through ADL. Malformed input
// raises nlohmann::json exceptions; parse_curve_spec and the CLI turn them
// into ValidationError.

void to_json(json& j, const Vec2& v);
void from_json(const json& j, Vec2& v);
void to_json(json& j, const CurveSpec& s);
void from_json(const json& j, CurveSpec& s);
void to_json(json& j, const MoebiusMap& m);
void from_json(const json& j, MoebiusMap& m);
void to_json(json& j, const FixedPoint& f);
void from_json(const json& j, FixedPoint& f);
void to_json(json& j, const MonodromyReport& r);
void from_json(const json& j, MonodromyReport& r);
/// Paths are not serialized; they go to SVG.
void to_json(json& j, const PlanimeterReading& r);
void from_json(const json& j, PlanimeterReading& r);
void to_json(json& j, const ErrorScanRow& r);
void from_json(const json& j, ErrorScanRow& r);
void to_json(json& j, const ClassificationSample& s);
void from_json(const json& j, ClassificationSample& s);
void to_json(json& j, const Transition& t);
void from_json(const json& j, Transition& t);
void to_json(json& j, const CriticalLength& c);
void from_json(const json& j, CriticalLength& c);
void to_json(json& j, const DefectBound& d);
void from_json(const json& j, DefectBound& d);
void to_json(json& j, const StageCheck& s);
void from_json(const json& j, StageCheck& s);
void to_json(json& j, const MenzinReport& r);
void from_json(const json& j, MenzinReport& r);
void to_json(json& j, const HpzReport& r);
void from_json(const json& j, HpzReport& r);
void to_json(json& j, const LoopIdentity& l);
void from_json(const json& j, LoopIdentity& l);

/// Parses a CurveSpec document; any problem becomes a ValidationError.
CurveSpec parse_curve_spec(const std::string& text);
CurveSpec read_curve_spec(const std::filesystem::path& path);

/// Shortest round-trip text for a double, '.' decimal point, no locale.
std::string format_number(double v);

/// t,x,y,alpha,cos_alpha
std::string rear_track_csv(const SteeringSolution& solution, const RearTrack& rear);
/// ell,base_param,alpha,estimate,exact,correction,residual,start
std::string error_scan_csv(const std::vector<ErrorScanRow>& rows);
/// ell,trace,class
std::string classification_csv(const std::vector<ClassificationSample>& curve);
/// t,x0,x1,x2 plus an alpha column when `alpha` is non-empty.
std::string hcurve_csv(const HCurve& curve, const std::vector<double>& alpha = {});
/// Reads columns x,y,theta (header required, extra columns ignored).
ConfigLoop parse_config_loop_csv(const std::string& text, double wheelbase);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a temporary file in the same directory and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tractrix
