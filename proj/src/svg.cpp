#include "tractrix/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace tractrix {

namespace {

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// At most ~4000 vertices per polyline; endpoints kept.
std::vector<Vec2> thin(const std::vector<Vec2>& p) {
  constexpr std::size_t cap = 4000;
  if (p.size() <= cap) return p;
  const std::size_t stride = (p.size() + cap - 1) / cap;
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < p.size(); i += stride) out.push_back(p[i]);
  if (out.back().x != p.back().x || out.back().y != p.back().y) out.push_back(p.back());
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void SvgFigure::polyline(const std::vector<Vec2>& points, const std::string& stroke, double width,
                         bool closed, const std::string& dash) {
  if (points.size() < 2) return;
  Item it{Item::line, thin(points), width, stroke, dash, {}, closed};
  items_.push_back(std::move(it));
}

void SvgFigure::dot(Vec2 center, double radius_px, const std::string& fill) {
  items_.push_back({Item::dot, {center}, radius_px, fill, {}, {}, false});
}

void SvgFigure::circle(Vec2 center, double radius, const std::string& stroke, double width) {
  items_.push_back({Item::circle, {center, center + Vec2{radius, 0.0}}, width, stroke, {}, {}, false});
}

void SvgFigure::text(Vec2 at, const std::string& content, const std::string& fill) {
  items_.push_back({Item::text, {at}, 12.0, fill, {}, content, false});
}

std::string SvgFigure::render(double width_px) const {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  const auto grow = [&](Vec2 p, double r) {
    x0 = std::min(x0, p.x - r);
    x1 = std::max(x1, p.x + r);
    y0 = std::min(y0, p.y - r);
    y1 = std::max(y1, p.y + r);
  };
  for (const auto& it : items_) {
    if (it.kind == Item::circle) {
      grow(it.points[0], norm(it.points[1] - it.points[0]));
    } else {
      for (auto p : it.points) grow(p, 0.0);
    }
  }
  if (!std::isfinite(x0)) x0 = y0 = -1.0, x1 = y1 = 1.0;
  double w = std::max(x1 - x0, 1e-9), h = std::max(y1 - y0, 1e-9);
  const double pad = 0.05 * std::max(w, h);
  x0 -= pad;
  y0 -= pad;
  w += 2 * pad;
  h += 2 * pad;
  const double s = width_px / w;
  const double height_px = std::clamp(h * s, 100.0, 4.0 * width_px);
  const double sy = height_px / h;
  const double k = std::min(s, sy);
  const auto X = [&](double x) { return num((x - x0) * k); };
  const auto Y = [&](double y) { return num((y0 + h - y) * k); };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w * k) + "\" height=\"" +
         num(h * k) + "\" viewBox=\"0 0 " + num(w * k) + " " + num(h * k) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& it : items_) {
    switch (it.kind) {
      case Item::line: {
        out += it.closed ? "<polygon" : "<polyline";
        out += " fill=\"none\" stroke=\"" + it.color + "\" stroke-width=\"" + num(it.size) + "\"";
        if (!it.dash.empty()) out += " stroke-dasharray=\"" + it.dash + "\"";
        out += " points=\"";
        for (std::size_t i = 0; i < it.points.size(); ++i) {
          if (i) out += ' ';
          out += X(it.points[i].x) + "," + Y(it.points[i].y);
        }
        out += "\"/>\n";
        break;
      }
      case Item::dot:
        out += "<circle cx=\"" + X(it.points[0].x) + "\" cy=\"" + Y(it.points[0].y) + "\" r=\"" +
               num(it.size) + "\" fill=\"" + it.color + "\"/>\n";
        break;
      case Item::circle:
        out += "<circle cx=\"" + X(it.points[0].x) + "\" cy=\"" + Y(it.points[0].y) + "\" r=\"" +
               num(norm(it.points[1] - it.points[0]) * k) + "\" fill=\"none\" stroke=\"" +
               it.color + "\" stroke-width=\"" + num(it.size) + "\"/>\n";
        break;
      case Item::text:
        out += "<text x=\"" + X(it.points[0].x) + "\" y=\"" + Y(it.points[0].y) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + it.color + "\">" +
               escape(it.content) + "</text>\n";
        break;
    }
  }
  out += "</svg>\n";
  return out;
}

std::string rear_track_svg(const SteeringSolution& solution, const RearTrack& rear) {
  SvgFigure fig;
  std::vector<Vec2> front;
  front.reserve(rear.t.size());
  for (double t : rear.t) front.push_back(solution.track().position(t));
  fig.polyline(front, "#1f77b4", 1.5);
  fig.polyline(rear.points, "#d62728", 1.5);
  for (double tc : rear.cusp_times) {
    const auto it = std::lower_bound(rear.t.begin(), rear.t.end(), tc);
    const std::size_t i = std::min<std::size_t>(it - rear.t.begin(), rear.t.size() - 1);
    const std::size_t j = i == 0 ? 0 : i - 1;
    const double span = rear.t[i] - rear.t[j];
    const double w = span > 0.0 ? (tc - rear.t[j]) / span : 0.0;
    fig.dot(rear.points[j] + w * (rear.points[i] - rear.points[j]), 3.0, "#000");
  }
  return fig.render();
}

std::string planimeter_svg(const PlanimeterReading& reading) {
  SvgFigure fig;
  fig.polyline(reading.tracer_path, "#1f77b4", 1.5);
  fig.polyline(reading.chisel_path, "#d62728", 1.0);
  if (!reading.chisel_path.empty()) {
    const Vec2 pivot = reading.tracer_path.front();
    const Vec2 last = reading.chisel_path.back();
    const double l = reading.wheelbase;
    const double from = std::atan2(pivot.y - last.y, pivot.x - last.x);
    std::vector<Vec2> arc;
    constexpr int n = 64;
    for (int i = 0; i <= n; ++i) {
      const double psi = from - reading.deflection * i / n;
      arc.push_back(pivot - l * unit(psi));
    }
    fig.polyline(arc, "#2ca02c", 1.5, false, "6,3");
    fig.dot(pivot, 3.0, "#000");
  }
  return fig.render();
}

std::string poincare_svg(const HCurve& curve) {
  SvgFigure fig;
  fig.circle({0.0, 0.0}, 1.0, "#888", 1.0);
  std::vector<Vec2> pts;
  pts.reserve(curve.points.size());
  for (const auto& p : curve.points) pts.push_back(poincare(p));
  fig.polyline(pts, "#9467bd", 1.5);
  if (!pts.empty()) fig.dot(pts.front(), 3.0, "#000");
  return fig.render();
}

std::string nested_tracks_svg(const FrontTrack& front, const std::vector<RearTrack>& rears) {
  SvgFigure fig;
  fig.polyline(sample_positions(front, 2048), "#000", 2.0, true);
  for (std::size_t i = 0; i < rears.size(); ++i) {
    fig.polyline(rears[i].points, kPalette[i % std::size(kPalette)], 1.2);
  }
  return fig.render();
}

}  // namespace tractrix
