#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tractrix/cli.hpp"
#include "tractrix/error.hpp"
#include "tractrix/io.hpp"

namespace py = pybind11;
using namespace tractrix;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
FrontTrack track_from(const std::string& spec) { return make_curve(parse_curve_spec(spec)); }

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of tractrix_lab";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("curve_summary", [](const std::string& spec) {
    const auto track = track_from(spec);
    json j = {{"length", track.total_length()},
              {"closed", track.closed()},
              {"geometry", std::string(to_string(track.geometry()))}};
    if (track.closed() && track.geometry() == Geometry::euclidean) j["area"] = enclosed_area(track);
    return dump(j);
  });

  m.def(
      "trace",
      [](const std::string& spec, double ell, double alpha0, double anchor, int steps) {
        const auto track = track_from(spec);
        const auto sol = integrate_steering(track, {ell, track.geometry(), steps}, alpha0, anchor);
        json j = {{"t", sol.times()}, {"alpha", sol.alpha()}};
        if (track.geometry() == Geometry::euclidean) {
          const auto rear = rear_track(sol);
          std::vector<std::array<double, 2>> pts;
          for (const auto& p : rear.points) pts.push_back({p.x, p.y});
          j["rear"] = pts;
          j["cusp_times"] = rear.cusp_times;
          j["signed_rear_length"] = rear.signed_length;
          j["area_between"] = area_between(sol);
        }
        return dump(j);
      },
      py::arg("spec"), py::arg("ell"), py::arg("alpha0"), py::arg("anchor") = 0.0, py::arg("steps") = 4096);

  m.def(
      "monodromy",
      [](const std::string& spec, double ell, int steps) {
        const auto track = track_from(spec);
        return dump(json(monodromy(track, {ell, track.geometry(), steps})));
      },
      py::arg("spec"), py::arg("ell"), py::arg("steps") = 4096);

  m.def(
      "planimeter",
      [](const std::string& spec, double ell, double base, const std::string& start) {
        PlanimeterOptions o;
        o.start = planimeter_start_from_string(start);
        return dump(json(measure(track_from(spec), ell, base, o)));
      },
      py::arg("spec"), py::arg("ell"), py::arg("base") = 0.0, py::arg("start") = "centroid");

  m.def(
      "menzin",
      [](const std::string& spec, double cap) {
        MenzinOptions o;
        o.cap_factor = cap;
        return dump(json(menzin_verify(track_from(spec), o)));
      },
      py::arg("spec"), py::arg("cap") = 10.0);

  m.def(
      "develop",
      [](const std::string& spec, int steps) {
        const auto c = develop_hyperbolic(track_from(spec), steps);
        return dump(json{{"t", c.t},
                         {"points", c.points},
                         {"point_gap", c.point_gap()},
                         {"frame_gap", c.frame_gap()}});
      },
      py::arg("spec"), py::arg("steps") = 4096);

  m.def(
      "hpz",
      [](const std::string& spec, double ell) { return dump(json(hpz_verify(track_from(spec), ell))); },
      py::arg("spec"), py::arg("ell"));

  m.def(
      "loop_identity",
      [](std::vector<double> x, std::vector<double> y, std::vector<double> theta, double ell) {
        return dump(json(loop_identity(ConfigLoop{std::move(x), std::move(y), std::move(theta), ell})));
      },
      py::arg("x"), py::arg("y"), py::arg("theta"), py::arg("ell") = 1.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::vector<std::string> argv{"tractrix_lab"};
    argv.insert(argv.end(), args.begin(), args.end());
    const int code = cli::run(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
