#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "tractrix/cli.hpp"
#include "tractrix/io.hpp"

using namespace tractrix;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = TRACTRIX_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tractrix_lab");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return data_dir + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tractrix_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("monodromy of the unit circle") {
  const auto r = run({"monodromy", "--input", data("circle_r1.json"), "--ell", "0.5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.err.empty());
  const auto j = json::parse(r.out);
  CHECK(j.at("class") == "hyperbolic");
  CHECK(j.at("wheelbase") == 0.5);
  const auto rep = j.get<MonodromyReport>();
  REQUIRE(rep.fixed.size() == 2);
  // Equilibria of the circle: sin(alpha) = l / r.
  CHECK(std::sin(rep.fixed[0].angle) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("trace writes JSON, CSV and SVG") {
  TempDir dir;
  const auto r = run({"trace", "--input", data("line.json"), "--ell", "1", "--alpha0", "0.5", "--anchor", "40",
                      "--json", dir / "t.json", "--csv", dir / "t.csv", "--svg", dir / "t.svg"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(json::parse(read_text_file(dir / "t.json")) == j);
  CHECK(j.at("cusp_times").size() == 1);
  // Area between a straight track and a full tractrix.
  CHECK(j.at("area_between").get<double>() == doctest::Approx(std::acos(-1.0) / 2).epsilon(1e-6));
  const auto csv = read_text_file(dir / "t.csv");
  CHECK(csv.rfind("t,x,y,alpha,cos_alpha\n", 0) == 0);
  CHECK(read_text_file(dir / "t.svg").find("<svg") != std::string::npos);
}

TEST_CASE("planimeter reading and scan") {
  auto r = run({"planimeter", "--input", data("circle_r1.json"), "--ell", "10"});
  REQUIRE(r.code == cli::kOk);
  auto j = json::parse(r.out);
  CHECK(j.at("start") == "centroid");
  CHECK(std::abs(j.at("estimate").get<double>() / j.at("correction_estimate").get<double>() - 1) < 2e-3);

  TempDir dir;
  r = run({"planimeter", "--input", data("ellipse_2_1.json"), "--ell", "4,8", "--base", "0,1,2", "--csv",
           dir / "scan.csv"});
  REQUIRE(r.code == cli::kOk);
  j = json::parse(r.out);
  CHECK(j.at("rows").size() == 8);
  std::istringstream csv(read_text_file(dir / "scan.csv"));
  int rows = -1;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 8);
}

TEST_CASE("menzin on the ellipse") {
  TempDir dir;
  const auto r = run({"menzin", "--input", data("ellipse_2_1.json"), "--csv", dir / "cls.csv", "--svg",
                      dir / "nested.svg"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j.at("passed") == true);
  CHECK(j.at("ell0").get<double>() >= std::sqrt(2.0));
  CHECK(read_text_file(dir / "cls.csv").rfind("ell,trace,class\n", 0) == 0);
  CHECK(fs::exists(dir / "nested.svg"));
}

TEST_CASE("a menzin scan capped below the critical length exits 3") {
  const auto r = run({"menzin", "--input", data("ellipse_2_1.json"), "--cap", "0.9"});
  CHECK(r.code == cli::kNumerical);
  const auto j = json::parse(r.out);
  CHECK(j.at("passed") == false);
  CHECK_FALSE(j.at("failures").empty());
}

TEST_CASE("develop and stargaze") {
  TempDir dir;
  const auto r = run({"develop", "--curvature", "1.1547005383792515", "--length", "10.882796185405306", "--star",
                      "2", "--csv", dir / "h.csv", "--svg", dir / "disk.svg"});
  REQUIRE(r.code == cli::kOk);
  const auto j = json::parse(r.out);
  CHECK(j.at("closes_c1") == true);
  CHECK(j.at("stargazing_residual").get<double>() < 1e-5);
  CHECK(read_text_file(dir / "h.csv").rfind("t,x0,x1,x2,alpha\n", 0) == 0);

  const auto e = run({"develop", "--input", data("ellipse_2_1.json"), "--star", "1"});
  REQUIRE(e.code == cli::kOk);
  CHECK(json::parse(e.out).at("stargazing_residual").get<double>() < 1e-5);
}

TEST_CASE("area criterion in curved geometries") {
  auto r = run({"hpz", "--input", data("sphere_cap.json"), "--ell", "0.5"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out).at("class") == "hyperbolic");
  r = run({"hpz", "--input", data("h2_circle_k2.json"), "--ell", "0.3"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out).at("passed") == true);
  r = run({"hpz", "--input", data("ellipse_2_1.json")});
  CHECK(r.code == cli::kValidation);
}

TEST_CASE("loopcheck from a file and at random") {
  TempDir dir;
  const double pi = std::acos(-1.0);
  std::string csv = "x,y,theta\n";
  for (int i = 0; i <= 64; ++i) {
    const double s = 2 * pi * i / 64;
    csv += format_number(std::cos(s)) + "," + format_number(std::sin(s)) + "," + format_number(s) + "\n";
  }
  fs::path file = dir.path / "loop.csv";
  write_file_atomic(file, csv);
  auto r = run({"loopcheck", "--input", file.string(), "--ell", "0.5"});
  REQUIRE(r.code == cli::kOk);
  auto j = json::parse(r.out);
  CHECK(j.at("lhs").get<double>() == doctest::Approx(j.at("rhs").get<double>()).epsilon(1e-9));

  r = run({"--seed", "11", "loopcheck", "--random", "3"});
  REQUIRE(r.code == cli::kOk);
  j = json::parse(r.out);
  CHECK(j.at("seed") == 11);
  REQUIRE(j.at("loops").size() == 3);
  for (const auto& l : j.at("loops")) {
    CHECK(std::abs(l.at("lhs").get<double>() - l.at("rhs").get<double>()) < 1e-8);
  }
  CHECK(run({"loopcheck"}).code == cli::kValidation);
  CHECK(run({"loopcheck", "--input", file.string(), "--random", "2"}).code == cli::kValidation);
}

TEST_CASE("the same seed gives byte-identical output") {
  const auto a = run({"--seed", "42", "loopcheck", "--random", "4"});
  const auto b = run({"--seed", "42", "loopcheck", "--random", "4"});
  const auto c = run({"--seed", "43", "loopcheck", "--random", "4"});
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  const auto m1 = run({"monodromy", "--input", data("ellipse_2_1.json"), "--ell", "1.3"});
  const auto m2 = run({"monodromy", "--input", data("ellipse_2_1.json"), "--ell", "1.3"});
  CHECK(m1.out == m2.out);
}

TEST_CASE("usage and validation errors exit 2") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"monodromy"},
           {"monodromy", "--input", data("circle_r1.json"), "--ell", "-1"},
           {"monodromy", "--input", data("circle_r1.json"), "--frobnicate"},
           {"monodromy", "--input", "/nonexistent.json"},
           {"planimeter", "--input", data("circle_r1.json"), "--start", "middle"},
           {"planimeter", "--input", data("line.json")},
           {"develop", "--curvature", "1"},
           {"develop"},
       }) {
    const auto r = run(args);
    CAPTURE(args.size());
    CHECK(r.code == cli::kValidation);
    CHECK_FALSE(r.err.empty());
  }
  const auto help = run({"--help"});
  CHECK(help.code == cli::kOk);
  CHECK(help.out.find("monodromy") != std::string::npos);
}

TEST_CASE("malformed input files exit 2") {
  TempDir dir;
  write_file_atomic(dir / "bad.json", R"({"kind": "circle", "r": -1})");
  write_file_atomic(dir / "junk.json", "not json");
  CHECK(run({"monodromy", "--input", dir / "bad.json"}).code == cli::kValidation);
  CHECK(run({"trace", "--input", dir / "junk.json"}).code == cli::kValidation);
}

TEST_CASE("the installed executable reports the same exit codes") {
  const std::string exe = TRACTRIX_CLI_PATH;
  if (exe.empty()) return;
  TempDir dir;
  const auto sh = [&](const std::string& args) {
    const int status = std::system(("\"" + exe + "\" " + args + " >" + (dir / "o") + " 2>" + (dir / "e")).c_str());
    return WEXITSTATUS(status);
  };
  CHECK(sh("monodromy --input \"" + data("circle_r1.json") + "\"") == 0);
  CHECK(sh("nonsense") == 2);
  CHECK(sh("menzin --input \"" + data("ellipse_2_1.json") + "\" --cap 0.9") == 3);
}
