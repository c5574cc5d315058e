// Copyright 2026 The wbal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "wbal/numfmt.hpp"

namespace wbal::figures {
namespace {

constexpr double kCanvas = 640.0;

// Fixed three decimals keeps SVG small and byte-stable.
std::string px(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
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

struct View {
  Point2 lo, hi;
  double scale = 1.0;

  Point2 map(const Point2& p) const {
    return {20.0 + (p.x() - lo.x()) * scale, 20.0 + (hi.y() - p.y()) * scale};
  }
};

View fit(const Polygon2& poly) {
  Point2 lo = poly.vertex(0), hi = poly.vertex(0);
  for (const auto& v : poly.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Point2 pad = 0.15 * (hi - lo) + Point2::Constant(1e-9);
  lo -= pad;
  hi += pad;
  View view{lo, hi, (kCanvas - 40.0) / std::max(hi.x() - lo.x(), hi.y() - lo.y())};
  return view;
}

std::string path_of(const std::vector<Point2>& pts, const View& view) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 q = view.map(pts[i]);
    d += (i == 0 ? "M" : " L") + px(q.x()) + " " + px(q.y());
  }
  return d + " Z";
}

}  // namespace

std::string polygon_svg(const Polygon2& poly, const std::vector<WeightMark>& marks,
                        const Point2& target, const std::vector<MigrationRound>& trace) {
  const View view = fit(poly);
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kCanvas) +
                  "\" height=\"" + px(kCanvas) + "\" viewBox=\"0 0 " + px(kCanvas) + " " +
                  px(kCanvas) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<path d=\"" + path_of(poly.vertices(), view) +
       "\" fill=\"#eef3fb\" stroke=\"#1f3b73\" stroke-width=\"2\"/>\n";
  static const std::array<const char*, 6> kPalette = {"#c0392b", "#27ae60", "#8e44ad",
                                                      "#d35400", "#16a085", "#7f8c8d"};
  for (std::size_t r = 0; r < trace.size(); ++r) {
    const ClosedPolyline2 img = affine_boundary_image(poly, trace[r].scale, trace[r].offset);
    s += "<path d=\"" + path_of(img.vertices, view) + "\" fill=\"none\" stroke=\"" +
         kPalette[r % kPalette.size()] +
         "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"><title>round " + std::to_string(r) +
         ": scale " + format_real(trace[r].scale) + "</title></path>\n";
  }
  const Point2 t = view.map(target);
  s += "<path d=\"M" + px(t.x() - 6) + " " + px(t.y()) + " h12 M" + px(t.x()) + " " +
       px(t.y() - 6) + " v12\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  double wmax = 0.0;
  for (const auto& m : marks) wmax = std::max(wmax, m.weight);
  for (const auto& m : marks) {
    const Point2 q = view.map(m.at);
    const double r = 3.0 + 9.0 * std::sqrt(wmax > 0.0 ? m.weight / wmax : 1.0);
    s += "<circle cx=\"" + px(q.x()) + "\" cy=\"" + px(q.y()) + "\" r=\"" + px(r) +
         "\" fill=\"#e67e22\" fill-opacity=\"0.7\" stroke=\"#6e2c00\"><title>" +
         escape(m.label) + "</title></circle>\n";
  }
  return s + "</svg>\n";
}

std::string signature_svg(const TripodMap& map, int n_t, int n_theta, double eps,
                          std::optional<std::pair<double, double>> marker) {
  const double cw = kCanvas / n_theta;
  const double ch = kCanvas / n_t;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kCanvas + 120) +
                  "\" height=\"" + px(kCanvas) + "\">\n";
  auto color = [](Signature sig) {
    switch (sig) {
      case Signature::PlusPlus: return "#2e86c1";
      case Signature::MinusMinus: return "#cb4335";
      case Signature::PlusMinus: return "#28b463";
      case Signature::MinusPlus: return "#f1c40f";
      case Signature::AllZero: break;
    }
    return "#7f8c8d";
  };
  // Row i is t = (i + 1/2) / n_t from the top; column j is theta.
  for (int i = 0; i < n_t; ++i) {
    const double tt = (i + 0.5) / n_t;
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * (j + 0.5) / n_theta;
      const auto [b, c] = map.companions(tt, th);
      const Signature sig = signature(map.polyhedron(), b, c, eps);
      s += "<rect x=\"" + px(j * cw) + "\" y=\"" + px(i * ch) + "\" width=\"" + px(cw) +
           "\" height=\"" + px(ch) + "\" fill=\"" + color(sig) + "\"/>\n";
    }
  }
  if (marker) {
    const double x = marker->second / (2.0 * std::numbers::pi) * kCanvas;
    const double y = marker->first * kCanvas;
    s += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) +
         "\" r=\"6\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  const std::array<Signature, 5> all = {Signature::PlusPlus, Signature::MinusMinus,
                                        Signature::PlusMinus, Signature::MinusPlus,
                                        Signature::AllZero};
  for (std::size_t k = 0; k < all.size(); ++k) {
    const double y = 20.0 + 24.0 * k;
    s += "<rect x=\"" + px(kCanvas + 16) + "\" y=\"" + px(y) + "\" width=\"16\" height=\"16\" fill=\"" +
         color(all[k]) + "\"/><text x=\"" + px(kCanvas + 40) + "\" y=\"" + px(y + 13) +
         "\" font-family=\"monospace\">" + to_string(all[k]) + "</text>\n";
  }
  return s + "</svg>\n";
}

void ObjWriter::group(const std::string& name) { text_ += "g " + name + "\n"; }

int ObjWriter::vertex(const Point3& p) {
  text_ += "v " + format_real(p.x()) + " " + format_real(p.y()) + " " + format_real(p.z()) + "\n";
  return ++count_;
}

void ObjWriter::mesh(const std::vector<Point3>& vertices, const std::vector<std::vector<int>>& faces) {
  const int base = count_ + 1;
  for (const auto& v : vertices) vertex(v);
  for (const auto& f : faces) {
    text_ += "f";
    for (int id : f) text_ += " " + std::to_string(base + id);
    text_ += "\n";
  }
}

void ObjWriter::polygon(const std::vector<Point3>& corners) {
  std::vector<int> ids;
  for (const auto& c : corners) ids.push_back(vertex(c));
  text_ += "f";
  for (int id : ids) text_ += " " + std::to_string(id);
  text_ += "\n";
}

void ObjWriter::points(const std::vector<Point3>& pts) {
  std::vector<int> ids;
  for (const auto& p : pts) ids.push_back(vertex(p));
  for (int id : ids) text_ += "p " + std::to_string(id) + "\n";
}

void ObjWriter::segment(const Point3& a, const Point3& b) {
  const int ia = vertex(a);
  const int ib = vertex(b);
  text_ += "l " + std::to_string(ia) + " " + std::to_string(ib) + "\n";
}

}  // namespace wbal::figures
