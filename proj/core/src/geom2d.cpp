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

#include "wbal/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wbal/error.hpp"
#include "wbal/numfmt.hpp"

namespace wbal {
namespace {

double shoelace(const std::vector<Point2>& v) {
  double twice = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross2(v[i], v[(i + 1) % n]);
  }
  return 0.5 * twice;
}

double bbox_diagonal(const std::vector<Point2>& v) {
  Point2 lo = v.front(), hi = v.front();
  for (const auto& p : v) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

int orient(const Point2& a, const Point2& b, const Point2& c) {
  const double v = cross2(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

// Closed-segment intersection with exact orientation signs. Used only for
// the simplicity check, where any contact between non-adjacent edges is fatal.
bool segments_touch(const Point2& a, const Point2& b, const Point2& c,
                    const Point2& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

struct SegHit {
  double s;
  double u;
};

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

// Intersections of curve segment p0->p1 with polygon edge q0->q1. Collinear
// overlaps produce the two ends of the overlap.
void intersect_segments(const Point2& p0, const Point2& p1, const Point2& q0,
                        const Point2& q1, double eps, std::vector<SegHit>& out) {
  const Point2 r = p1 - p0;
  const Point2 d = q1 - q0;
  const double lr2 = r.squaredNorm(), ld2 = d.squaredNorm();
  const double lr = std::sqrt(lr2), ld = std::sqrt(ld2);
  if (lr == 0.0 || ld == 0.0) return;
  const Point2 w = q0 - p0;
  const double denom = cross2(r, d);
  const double es = eps / lr, eu = eps / ld;

  if (std::abs(denom) > 1e-12 * lr * ld) {
    const double s = cross2(w, d) / denom;
    const double u = cross2(w, r) / denom;
    if (s >= -es && s <= 1 + es && u >= -eu && u <= 1 + eu) {
      out.push_back({clamp01(s), clamp01(u)});
      return;
    }
    // Nearly parallel segments can touch at an end without the line crossing
    // landing inside the parameter window.
    const double up0 = clamp01((p0 - q0).dot(d) / ld2);
    if ((q0 + up0 * d - p0).norm() <= eps) out.push_back({0.0, up0});
    const double up1 = clamp01((p1 - q0).dot(d) / ld2);
    if ((q0 + up1 * d - p1).norm() <= eps) out.push_back({1.0, up1});
    const double sq0 = clamp01((q0 - p0).dot(r) / lr2);
    if ((p0 + sq0 * r - q0).norm() <= eps) out.push_back({sq0, 0.0});
    const double sq1 = clamp01((q1 - p0).dot(r) / lr2);
    if ((p0 + sq1 * r - q1).norm() <= eps) out.push_back({sq1, 1.0});
    return;
  }

  if (std::abs(cross2(w, r)) / lr > eps) return;
  const double t0 = w.dot(r) / lr2;
  const double t1 = (q1 - p0).dot(r) / lr2;
  const double lo = std::max(0.0, std::min(t0, t1));
  const double hi = std::min(1.0, std::max(t0, t1));
  if (hi < lo - es) return;
  auto push_at = [&](double s) {
    const Point2 x = p0 + s * r;
    out.push_back({s, clamp01((x - q0).dot(d) / ld2)});
  };
  if (hi - lo <= es) {
    push_at(clamp01(0.5 * (lo + hi)));
  } else {
    push_at(lo);
    push_at(hi);
  }
}

}  // namespace

Polygon2::Polygon2(std::vector<Point2> vertices)
    : vertices_(std::move(vertices)), diameter_(bbox_diagonal(vertices_)) {}

double Polygon2::signed_area() const { return shoelace(vertices_); }

Polygon2 Polygon2::translated(const Point2& offset) const {
  std::vector<Point2> moved = vertices_;
  for (auto& p : moved) p += offset;
  return Polygon2(std::move(moved));
}

Point2 ClosedPolyline2::eval(int segment, double s) const {
  const auto n = vertices.size();
  const auto j = static_cast<std::size_t>(segment);
  return (1.0 - s) * vertices[j] + s * vertices[(j + 1) % n];
}

Tolerances Tolerances::for_scale(double diameter, double weight_sum) {
  const double w = weight_sum > 0.0 ? weight_sum : 1.0;
  return {1e-9 * diameter, 1e-8 * diameter * w};
}

Polygon2 validate_polygon(std::vector<Point2> raw) {
  const std::size_t n = raw.size();
  if (n < 3) fail(Errc::Degenerate, "polygon needs at least 3 vertices");
  for (const auto& p : raw) {
    if (!p.allFinite()) fail(Errc::Degenerate, "non-finite vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i] == raw[(i + 1) % n]) {
      fail(Errc::Degenerate, "repeated vertex " + std::to_string(i));
    }
  }
  // All vertices on one line: flat, not self-crossing.
  bool flat = true;
  for (std::size_t i = 2; i < n && flat; ++i) flat = orient(raw[0], raw[1], raw[i]) == 0;
  if (flat) fail(Errc::Degenerate, "zero area");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Point2 &a = raw[i], &b = raw[(i + 1) % n];
      const Point2 &c = raw[j], &d = raw[(j + 1) % n];
      if (adjacent) {
        // Adjacent edges share one endpoint; they may not fold back onto
        // each other.
        const Point2& shared = (j == i + 1) ? b : a;
        const Point2& far_i = (j == i + 1) ? a : b;
        const Point2& far_j = (j == i + 1) ? d : c;
        if (orient(far_i, shared, far_j) == 0 &&
            (far_i - shared).dot(far_j - shared) > 0) {
          fail(Errc::NonSimple, "edges " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) {
        fail(Errc::NonSimple, "edges " + std::to_string(i) + " and " +
                                  std::to_string(j) + " intersect");
      }
    }
  }
  const double area = shoelace(raw);
  if (area == 0.0) fail(Errc::Degenerate, "zero area");
  if (area < 0.0) std::reverse(raw.begin(), raw.end());
  return Polygon2(std::move(raw));
}

Point2 eval_boundary(const Polygon2& poly, const BoundaryPoint2& bp) {
  if (bp.edge < 0 || bp.edge >= poly.size()) {
    fail(Errc::IndexOutOfRange, "edge " + std::to_string(bp.edge));
  }
  return (1.0 - bp.s) * poly.edge_start(bp.edge) + bp.s * poly.edge_end(bp.edge);
}

NearestBoundary nearest_boundary_point(const Polygon2& poly, const Point2& p) {
  const double tie = 1e-12 * poly.diameter();
  NearestBoundary best{{0, 0.0}, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < poly.size(); ++i) {
    const Point2& a = poly.edge_start(i);
    const Point2 d = poly.edge_end(i) - a;
    const double t = clamp01((p - a).dot(d) / d.squaredNorm());
    const double dist = (a + t * d - p).norm();
    if (dist < best.distance - tie) best = {{i, t}, dist};
  }
  return best;
}

PointLocation2 locate_point(const Polygon2& poly, const Point2& p, double eps) {
  const NearestBoundary nb = nearest_boundary_point(poly, p);
  if (nb.distance <= eps) return {Side::OnBoundary, nb.at, nb.distance};
  bool inside = false;
  const int n = poly.size();
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = poly.vertex(i);
    const Point2& b = poly.vertex(j);
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return {inside ? Side::Inside : Side::Outside, nb.at, nb.distance};
}

ClosedPolyline2 affine_boundary_image(const Polygon2& poly, double scale,
                                      const Point2& offset) {
  if (scale == 0.0) fail(Errc::ZeroScale);
  ClosedPolyline2 out;
  out.vertices.reserve(poly.vertices().size());
  for (const auto& v : poly.vertices()) out.vertices.push_back(scale * v + offset);
  out.provenance.resize(poly.vertices().size());
  for (int i = 0; i < poly.size(); ++i) out.provenance[static_cast<std::size_t>(i)] = i;
  return out;
}

std::vector<CurveHit> curve_polygon_intersections(const ClosedPolyline2& curve,
                                                  const Polygon2& poly,
                                                  double eps) {
  const int n = poly.size();
  const int m = curve.segments();

  // Edges ordered by left x-extent; each curve segment only visits the
  // prefix of edges starting left of its right end.
  struct Span {
    double xlo, xhi, ylo, yhi;
    int index;
  };
  std::vector<Span> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Point2& a = poly.edge_start(i);
    const Point2& b = poly.edge_end(i);
    edges.push_back({std::min(a.x(), b.x()), std::max(a.x(), b.x()),
                     std::min(a.y(), b.y()), std::max(a.y(), b.y()), i});
  }
  std::sort(edges.begin(), edges.end(), [](const Span& x, const Span& y) {
    return x.xlo < y.xlo || (x.xlo == y.xlo && x.index < y.index);
  });

  std::vector<CurveHit> hits;
  std::vector<SegHit> local;
  for (int j = 0; j < m; ++j) {
    const Point2& p0 = curve.vertices[static_cast<std::size_t>(j)];
    const Point2& p1 = curve.vertices[static_cast<std::size_t>((j + 1) % m)];
    const double xlo = std::min(p0.x(), p1.x()) - eps;
    const double xhi = std::max(p0.x(), p1.x()) + eps;
    const double ylo = std::min(p0.y(), p1.y()) - eps;
    const double yhi = std::max(p0.y(), p1.y()) + eps;
    const auto end = std::upper_bound(
        edges.begin(), edges.end(), xhi,
        [](double x, const Span& e) { return x < e.xlo; });
    for (auto it = edges.begin(); it != end; ++it) {
      if (it->xhi < xlo || it->yhi < ylo || it->ylo > yhi) continue;
      local.clear();
      intersect_segments(p0, p1, poly.edge_start(it->index),
                         poly.edge_end(it->index), eps, local);
      for (const auto& h : local) {
        CurveHit hit;
        hit.segment = j;
        hit.s = h.s;
        hit.on_polygon = {it->index, h.u};
        if (hit.s >= 1.0) hit = {(j + 1) % m, 0.0, hit.on_polygon, {}};
        if (hit.on_polygon.s >= 1.0) hit.on_polygon = {(it->index + 1) % n, 0.0};
        hit.point = eval_boundary(poly, hit.on_polygon);
        hits.push_back(hit);
      }
    }
  }

  std::sort(hits.begin(), hits.end(), [](const CurveHit& a, const CurveHit& b) {
    if (a.segment != b.segment) return a.segment < b.segment;
    if (a.s != b.s) return a.s < b.s;
    if (a.on_polygon.edge != b.on_polygon.edge) return a.on_polygon.edge < b.on_polygon.edge;
    return a.on_polygon.s < b.on_polygon.s;
  });
  std::vector<CurveHit> unique;
  unique.reserve(hits.size());
  for (const auto& h : hits) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend() && it->segment == h.segment; ++it) {
      if ((it->point - h.point).norm() <= eps &&
          (curve.eval(it->segment, it->s) - curve.eval(h.segment, h.s)).norm() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(h);
  }
  return unique;
}

std::optional<MigrationHit> first_companion_hit(const Polygon2& poly,
                                                const BoundaryPoint2& start,
                                                double scale,
                                                const Point2& offset,
                                                double eps) {
  const Point2 companion = scale * eval_boundary(poly, start) + offset;
  const PointLocation2 here = locate_point(poly, companion, eps);
  if (here.side == Side::OnBoundary) return MigrationHit{start, here.at, 0.0};

  const int n = poly.size();
  const ClosedPolyline2 image = affine_boundary_image(poly, scale, offset);
  const auto hits = curve_polygon_intersections(image, poly, eps);
  std::optional<MigrationHit> best;
  const double slack = 1e-12;
  for (const auto& h : hits) {
    double travel = ((h.segment - start.edge + n) % n) + h.s - start.s;
    if (travel < 0.0) travel = travel > -slack ? 0.0 : travel + n;
    if (!best || travel < best->travel) {
      best = MigrationHit{{h.segment, h.s}, h.on_polygon, travel};
    }
  }
  return best;
}

AntipodalPair antipodal_about(const Polygon2& poly, const Point2& center) {
  return antipodal_about(poly, center, Tolerances::for_scale(poly.diameter()));
}

AntipodalPair antipodal_about(const Polygon2& poly, const Point2& center,
                              const Tolerances& tol) {
  if (locate_point(poly, center, tol.geom).side == Side::Outside) {
    fail(Errc::CenterOutside);
  }
  // Walk from the boundary point nearest the center; its reflection lies in
  // the polygon, so the first boundary contact of the reflected copy is the
  // pair.
  const BoundaryPoint2 start = nearest_boundary_point(poly, center).at;
  const auto hit = first_companion_hit(poly, start, -1.0, 2.0 * center, tol.geom);
  if (!hit) fail(Errc::NoIntersection);
  return {hit->mover, hit->follower};
}

std::vector<Point2> parse_polygon_text(std::string_view text) {
  std::vector<Point2> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != 2) {
      fail(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 'x y'");
    }
    pts.emplace_back(parse_real(toks[0]), parse_real(toks[1]));
  }
  return pts;
}

std::string format_polygon_text(const Polygon2& poly) {
  std::string out;
  for (const auto& v : poly.vertices()) {
    out += format_real(v.x());
    out += ' ';
    out += format_real(v.y());
    out += '\n';
  }
  return out;
}

}  // namespace wbal
