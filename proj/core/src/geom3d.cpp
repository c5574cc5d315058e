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

#include "wbal/geom3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

#include "wbal/error.hpp"
#include "wbal/numfmt.hpp"

namespace wbal {
namespace {

using Vec3 = Eigen::Vector3d;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Vec3 newell_normal(const std::vector<Point3>& pts, const std::vector<int>& face) {
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < face.size(); ++i) {
    const Point3& a = pts[idx(face[i])];
    const Point3& b = pts[idx(face[(i + 1) % face.size()])];
    n.x() += (a.y() - b.y()) * (a.z() + b.z());
    n.y() += (a.z() - b.z()) * (a.x() + b.x());
    n.z() += (a.x() - b.x()) * (a.y() + b.y());
  }
  return n;
}

double bbox_diagonal(const std::vector<Point3>& pts) {
  if (pts.empty()) return 0.0;
  Vec3 lo = pts.front();
  Vec3 hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Signed volume of a set of outward faces (fan about the first vertex).
double signed_volume(const std::vector<Point3>& pts, const std::vector<std::vector<int>>& faces,
                     const std::vector<int>& which) {
  double vol = 0.0;
  for (int f : which) {
    const auto& face = faces[idx(f)];
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      vol += pts[idx(face[0])].dot(pts[idx(face[i])].cross(pts[idx(face[i + 1])]));
    }
  }
  return vol / 6.0;
}

// Axis least aligned with q (first on ties).
int least_aligned_axis(const Vec3& q) {
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(q(k)) < std::abs(q(best))) best = k;
  }
  return best;
}

// Solid angle of triangle abc seen from the origin.
double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = a.norm();
  const double lb = b.norm();
  const double lc = c.norm();
  const double num = a.dot(b.cross(c));
  const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(num, den);
}

double winding_number(const Polyhedron3& poly, const Point3& p) {
  double total = 0.0;
  for (const auto& t : poly.triangles()) {
    total += solid_angle(poly.vertex(t.v[0]) - p, poly.vertex(t.v[1]) - p,
                         poly.vertex(t.v[2]) - p);
  }
  return total / (4.0 * std::numbers::pi);
}

enum class RayResult { Miss, Hit, Degenerate };

RayResult ray_triangle(const Point3& o, const Vec3& dir, const Point3& a, const Point3& b,
                       const Point3& c, double scale) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pv = dir.cross(e2);
  const double det = e1.dot(pv);
  const double area_scale = e1.norm() * e2.norm();
  if (std::abs(det) <= 1e-12 * area_scale) {
    // Ray parallel to the triangle plane: only a problem if it lies in it.
    const Vec3 n = e1.cross(e2);
    const double nn = n.norm();
    if (nn == 0.0) return RayResult::Miss;
    return std::abs((o - a).dot(n)) / nn <= 1e-9 * scale ? RayResult::Degenerate
                                                          : RayResult::Miss;
  }
  const double inv = 1.0 / det;
  const Vec3 tv = o - a;
  const double u = tv.dot(pv) * inv;
  const Vec3 qv = tv.cross(e1);
  const double v = dir.dot(qv) * inv;
  const double t = e2.dot(qv) * inv;
  const double tol = 1e-9;
  if (u < -tol || v < -tol || u + v > 1.0 + tol) return RayResult::Miss;
  if (t <= 0.0) return RayResult::Miss;
  if (u < tol || v < tol || u + v > 1.0 - tol) return RayResult::Degenerate;
  return RayResult::Hit;
}

// Deterministic, irrational-looking directions for ray retries.
Vec3 ray_direction(int k) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 0.8137 - 0.1731 * k;
  const double zz = z - 2.0 * std::floor((z + 1.0) / 2.0);
  const double r = std::sqrt(std::max(0.0, 1.0 - zz * zz));
  const double phi = 0.4123 + golden * (k + 1);
  return Vec3(r * std::cos(phi), r * std::sin(phi), zz).normalized();
}

bool inside_by_rays(const Polyhedron3& poly, const Point3& p) {
  const double scale = poly.diameter();
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Vec3 dir = ray_direction(attempt);
    int crossings = 0;
    bool degenerate = false;
    for (const auto& t : poly.triangles()) {
      const RayResult r = ray_triangle(p, dir, poly.vertex(t.v[0]), poly.vertex(t.v[1]),
                                       poly.vertex(t.v[2]), scale);
      if (r == RayResult::Degenerate) {
        degenerate = true;
        break;
      }
      if (r == RayResult::Hit) ++crossings;
    }
    if (!degenerate) return crossings % 2 == 1;
  }
  return std::abs(winding_number(poly, p)) > 0.5;
}

}  // namespace

Eigen::Vector3d closest_point_barycentric(const Point3& p, const Point3& a, const Point3& b,
                                          const Point3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return {1, 0, 0};
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return {0, 1, 0};
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return {1 - v, v, 0};
  }
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return {0, 0, 1};
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return {1 - w, 0, w};
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {0, 1 - w, w};
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return {1 - v - w, v, w};
}

Polyhedron3 validate_polyhedron(std::vector<Point3> vertices,
                                std::vector<std::vector<int>> faces) {
  const int nv = static_cast<int>(vertices.size());
  if (nv < 4 || faces.size() < 4) fail(Errc::OpenSurface, "too few vertices or faces");
  for (const auto& p : vertices) {
    if (!p.allFinite()) fail(Errc::InvalidArgument, "non-finite vertex");
  }
  const double diam = bbox_diagonal(vertices);
  if (!(diam > 0.0)) fail(Errc::Degenerate, "all vertices coincide");
  for (const auto& f : faces) {
    if (f.size() < 3) fail(Errc::Degenerate, "face with fewer than 3 vertices");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 0 || f[i] >= nv) fail(Errc::IndexOutOfRange, "face vertex index");
      for (std::size_t j = 0; j < i; ++j) {
        if (f[i] == f[j]) fail(Errc::Degenerate, "face repeats a vertex");
      }
    }
  }
  const int nf = static_cast<int>(faces.size());

  // Every undirected face edge must be used by exactly two faces.
  std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> edge_use;
  for (int f = 0; f < nf; ++f) {
    const auto& face = faces[idx(f)];
    for (std::size_t i = 0; i < face.size(); ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % face.size()];
      edge_use[{std::min(a, b), std::max(a, b)}].push_back({f, a < b});
    }
  }
  for (const auto& [e, uses] : edge_use) {
    if (uses.size() != 2) fail(Errc::OpenSurface, "edge not shared by exactly two faces");
  }

  // Orient consistently by BFS over faces; flip components with negative
  // volume.
  std::vector<int> flip(idx(nf), -1);
  std::vector<std::vector<int>> components;
  for (int seed = 0; seed < nf; ++seed) {
    if (flip[idx(seed)] >= 0) continue;
    std::vector<int> comp;
    std::queue<int> bfs;
    flip[idx(seed)] = 0;
    bfs.push(seed);
    while (!bfs.empty()) {
      const int f = bfs.front();
      bfs.pop();
      comp.push_back(f);
      const auto& face = faces[idx(f)];
      for (std::size_t i = 0; i < face.size(); ++i) {
        const int a = face[i];
        const int b = face[(i + 1) % face.size()];
        const auto& uses = edge_use[{std::min(a, b), std::max(a, b)}];
        const auto& mine = uses[0].first == f ? uses[0] : uses[1];
        const auto& other = uses[0].first == f ? uses[1] : uses[0];
        // Same traversal direction means one of the two must flip.
        const bool same_dir = mine.second == other.second;
        const int want = flip[idx(f)] ^ (same_dir ? 1 : 0);
        if (flip[idx(other.first)] < 0) {
          flip[idx(other.first)] = want;
          bfs.push(other.first);
        } else if (flip[idx(other.first)] != want) {
          fail(Errc::OpenSurface, "surface is not orientable");
        }
      }
    }
    components.push_back(std::move(comp));
  }
  for (int f = 0; f < nf; ++f) {
    if (flip[idx(f)] == 1) std::reverse(faces[idx(f)].begin(), faces[idx(f)].end());
  }
  for (const auto& comp : components) {
    if (signed_volume(vertices, faces, comp) < 0.0) {
      for (int f : comp) std::reverse(faces[idx(f)].begin(), faces[idx(f)].end());
    }
  }

  Polyhedron3 out;
  out.diameter_ = diam;
  const double plane_eps = 1e-9 * diam;
  for (int f = 0; f < nf; ++f) {
    const auto& face = faces[idx(f)];
    Vec3 n = newell_normal(vertices, face);
    const double len = n.norm();
    if (!(len > 1e-15 * diam * diam)) fail(Errc::Degenerate, "face with zero area");
    n /= len;
    double offset = 0.0;
    for (int v : face) offset += n.dot(vertices[idx(v)]);
    offset /= static_cast<double>(face.size());
    for (int v : face) {
      if (std::abs(n.dot(vertices[idx(v)]) - offset) > plane_eps) {
        fail(Errc::NonPlanarFace, "face " + std::to_string(f));
      }
    }
    out.normals_.push_back(n);
    out.offsets_.push_back(offset);
    for (std::size_t i = 1; i + 1 < face.size(); ++i) {
      out.triangles_.push_back({{face[0], face[i], face[i + 1]}, f});
    }
  }
  out.vertices_ = std::move(vertices);
  out.faces_ = std::move(faces);
  return out;
}

Polyhedron3 load_off(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.push_back(line);
    }
  }
  auto tokens_of = [](const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    return toks;
  };
  if (lines.empty()) fail(Errc::ParseError, "empty OFF input");
  std::size_t at = 0;
  auto header = tokens_of(lines[at]);
  if (header.empty() || header[0] != "OFF") fail(Errc::ParseError, "missing OFF header");
  header.erase(header.begin());
  if (header.empty()) {
    if (++at >= lines.size()) fail(Errc::ParseError, "missing OFF counts");
    header = tokens_of(lines[at]);
  }
  if (header.size() < 2) fail(Errc::ParseError, "OFF counts need vertex and face numbers");
  const long long nv = parse_integer(header[0]);
  const long long nf = parse_integer(header[1]);
  if (nv < 0 || nf < 0) fail(Errc::ParseError, "negative OFF counts");
  ++at;
  if (lines.size() < at + static_cast<std::size_t>(nv + nf)) {
    fail(Errc::ParseError, "OFF input truncated");
  }
  std::vector<Point3> vertices;
  for (long long i = 0; i < nv; ++i, ++at) {
    const auto toks = tokens_of(lines[at]);
    if (toks.size() < 3) fail(Errc::ParseError, "vertex line needs 3 coordinates");
    vertices.emplace_back(parse_real(toks[0]), parse_real(toks[1]), parse_real(toks[2]));
  }
  std::vector<std::vector<int>> faces;
  for (long long i = 0; i < nf; ++i, ++at) {
    const auto toks = tokens_of(lines[at]);
    if (toks.empty()) fail(Errc::ParseError, "empty face line");
    const long long k = parse_integer(toks[0]);
    if (k < 3 || toks.size() < static_cast<std::size_t>(k + 1)) {
      fail(Errc::ParseError, "face line too short");
    }
    std::vector<int> face;
    for (long long j = 1; j <= k; ++j) {
      face.push_back(static_cast<int>(parse_integer(toks[static_cast<std::size_t>(j)])));
    }
    faces.push_back(std::move(face));
  }
  return validate_polyhedron(std::move(vertices), std::move(faces));
}

std::string format_off(const Polyhedron3& poly) {
  std::string out = "OFF\n";
  out += std::to_string(poly.vertices().size()) + " " + std::to_string(poly.faces().size()) +
         " 0\n";
  for (const auto& v : poly.vertices()) {
    out += format_real(v.x()) + " " + format_real(v.y()) + " " + format_real(v.z()) + "\n";
  }
  for (const auto& f : poly.faces()) {
    out += std::to_string(f.size());
    for (int v : f) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

Point3 eval_surface(const Polyhedron3& poly, const SurfacePoint3& sp) {
  if (sp.triangle < 0 || sp.triangle >= static_cast<int>(poly.triangles().size())) {
    fail(Errc::IndexOutOfRange, "surface point triangle");
  }
  const auto& t = poly.triangles()[idx(sp.triangle)];
  return sp.bary(0) * poly.vertex(t.v[0]) + sp.bary(1) * poly.vertex(t.v[1]) +
         sp.bary(2) * poly.vertex(t.v[2]);
}

SurfacePoint3 surface_point_at_vertex(const Polyhedron3& poly, int v) {
  const auto& tris = poly.triangles();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      if (tris[i].v[static_cast<std::size_t>(k)] == v) {
        SurfacePoint3 sp;
        sp.face = tris[i].face;
        sp.triangle = static_cast<int>(i);
        sp.bary = Vec3::Zero();
        sp.bary(k) = 1.0;
        return sp;
      }
    }
  }
  fail(Errc::IndexOutOfRange, "vertex not on any triangle");
}

NearestSurface nearest_surface_point(const Polyhedron3& poly, const Point3& p) {
  NearestSurface best;
  best.distance = std::numeric_limits<double>::infinity();
  const double tie = 1e-12 * poly.diameter();
  const auto& tris = poly.triangles();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const auto& t = tris[i];
    const Point3& a = poly.vertex(t.v[0]);
    const Point3& b = poly.vertex(t.v[1]);
    const Point3& c = poly.vertex(t.v[2]);
    const Vec3 bary = closest_point_barycentric(p, a, b, c);
    const double d = (bary(0) * a + bary(1) * b + bary(2) * c - p).norm();
    if (d < best.distance - tie) {
      best.distance = d;
      best.at = {t.face, static_cast<int>(i), bary};
    }
  }
  return best;
}

PointLocation3 side3(const Polyhedron3& poly, const Point3& p, double eps) {
  const NearestSurface near = nearest_surface_point(poly, p);
  PointLocation3 loc;
  loc.at = near.at;
  loc.distance = near.distance;
  if (near.distance <= eps) {
    loc.side = Side::OnBoundary;
  } else {
    loc.side = inside_by_rays(poly, p) ? Side::Inside : Side::Outside;
  }
  return loc;
}

double signed_distance(const Polyhedron3& poly, const Point3& p) {
  const PointLocation3 loc = side3(poly, p, 0.0);
  return loc.side == Side::Inside ? -loc.distance : loc.distance;
}

ExtremePoints extreme_boundary_points(const Polyhedron3& poly, double eps) {
  const PointLocation3 origin = side3(poly, Point3::Zero(), eps);
  if (origin.side == Side::Outside) fail(Errc::OriginOutside);
  if (origin.side == Side::OnBoundary) fail(Errc::OriginOnBoundary);
  ExtremePoints out;
  out.nearest = origin.at;
  out.r_min = origin.distance;
  const double tie = 1e-12 * poly.diameter();
  int far = 0;
  for (int v = 1; v < static_cast<int>(poly.vertices().size()); ++v) {
    if (poly.vertex(v).norm() > poly.vertex(far).norm() + tie) far = v;
  }
  out.farthest = surface_point_at_vertex(poly, far);
  out.r_max = poly.vertex(far).norm();
  return out;
}

Point3 SurfacePath::eval(double tt) const {
  if (xyz.empty()) fail(Errc::InvalidArgument, "empty path");
  if (tt <= t.front()) return xyz.front();
  if (tt >= t.back()) return xyz.back();
  const auto it = std::upper_bound(t.begin(), t.end(), tt);
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  const double span = t[j] - t[j - 1];
  const double tau = span > 0.0 ? (tt - t[j - 1]) / span : 0.0;
  return (1.0 - tau) * xyz[j - 1] + tau * xyz[j];
}

SurfacePath surface_path(const Polyhedron3& poly, const SurfacePoint3& p0,
                         const SurfacePoint3& p1) {
  const Point3 x0 = eval_surface(poly, p0);
  const Point3 x1 = eval_surface(poly, p1);
  if ((x0 - x1).norm() <= 1e-12 * poly.diameter()) {
    fail(Errc::InvalidArgument, "path endpoints coincide");
  }
  const auto& tris = poly.triangles();
  const auto& t0 = tris[idx(p0.triangle)];
  const auto& t1 = tris[idx(p1.triangle)];

  std::vector<SurfacePoint3> pts{p0};
  std::vector<Point3> xyz{x0};
  if (p0.triangle != p1.triangle) {
    auto nearest_corner = [&](const Triangle3& t, const Point3& x) {
      int best = t.v[0];
      for (int k = 1; k < 3; ++k) {
        if ((poly.vertex(t.v[static_cast<std::size_t>(k)]) - x).norm() <
            (poly.vertex(best) - x).norm()) {
          best = t.v[static_cast<std::size_t>(k)];
        }
      }
      return best;
    };
    const int s = nearest_corner(t0, x0);
    const int g = nearest_corner(t1, x1);

    // Dijkstra on the triangulation's edge graph.
    const int nv = static_cast<int>(poly.vertices().size());
    std::vector<std::vector<int>> adj(idx(nv));
    for (const auto& t : tris) {
      for (int k = 0; k < 3; ++k) {
        const int a = t.v[static_cast<std::size_t>(k)];
        const int b = t.v[static_cast<std::size_t>((k + 1) % 3)];
        adj[idx(a)].push_back(b);
        adj[idx(b)].push_back(a);
      }
    }
    for (auto& nb : adj) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    std::vector<double> dist(idx(nv), std::numeric_limits<double>::infinity());
    std::vector<int> prev(idx(nv), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[idx(s)] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[idx(u)]) continue;
      if (u == g) break;
      for (int w : adj[idx(u)]) {
        const double nd = d + (poly.vertex(u) - poly.vertex(w)).norm();
        if (nd < dist[idx(w)]) {
          dist[idx(w)] = nd;
          prev[idx(w)] = u;
          heap.push({nd, w});
        }
      }
    }
    if (!std::isfinite(dist[idx(g)])) fail(Errc::Disconnected);
    std::vector<int> chain;
    for (int u = g; u != -1; u = prev[idx(u)]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());

    auto in_tri = [](const Triangle3& t, int v) {
      return t.v[0] == v || t.v[1] == v || t.v[2] == v;
    };
    // Skip corners that would make the path double back inside an end
    // triangle.
    std::size_t lo = 0;
    std::size_t hi = chain.size();
    while (hi - lo >= 2 && in_tri(t0, chain[lo + 1])) ++lo;
    while (hi - lo >= 2 && in_tri(t1, chain[hi - 2])) --hi;
    const double dup = 1e-12 * poly.diameter();
    for (std::size_t i = lo; i < hi; ++i) {
      const Point3& x = poly.vertex(chain[i]);
      if ((x - xyz.back()).norm() <= dup || (x - x1).norm() <= dup) continue;
      pts.push_back(surface_point_at_vertex(poly, chain[i]));
      xyz.push_back(x);
    }
  }
  pts.push_back(p1);
  xyz.push_back(x1);

  SurfacePath path;
  path.points = std::move(pts);
  path.xyz = std::move(xyz);
  path.t.assign(path.xyz.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 1; i < path.xyz.size(); ++i) {
    total += (path.xyz[i] - path.xyz[i - 1]).norm();
    path.t[i] = total;
  }
  for (auto& v : path.t) v /= total;
  path.t.back() = 1.0;
  return path;
}

namespace {

Vec3 project_perp(const Vec3& v, const Point3& q) {
  const Vec3 qh = q.normalized();
  return v - v.dot(qh) * qh;
}

// Minimum projection norm over 257 dyadic samples of one knot interval.
double min_blend_norm(const Point3& qa, const Point3& qb, const Vec3& va, const Vec3& vb) {
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 256; ++j) {
    const double tau = j / 256.0;
    const Point3 q = (1.0 - tau) * qa + tau * qb;
    worst = std::min(worst, project_perp((1.0 - tau) * va + tau * vb, q).norm());
  }
  return worst;
}

Vec3 midpoint_vector(const Point3& q, const Vec3& va, const Vec3& vb) {
  const Vec3 a = project_perp(va, q).normalized();
  const Vec3 b = project_perp(vb, q).normalized();
  const Vec3 sum = a + b;
  if (sum.norm() > 1e-3) return sum.normalized();
  // Nearly opposite: turn a by a right angle inside H(q), towards b's side.
  Vec3 turn = q.normalized().cross(a);
  if (turn.dot(b) < 0.0) turn = -turn;
  return turn.normalized();
}

}  // namespace

FrameField frame_field(const SurfacePath& path) {
  FrameField field;
  const double tiny = 1e-300;
  for (std::size_t i = 0; i < path.xyz.size(); ++i) {
    const Point3& q = path.xyz[i];
    if (q.norm() <= tiny) fail(Errc::InvalidArgument, "path passes through the origin");
    const Vec3 axis = Vec3::Unit(least_aligned_axis(q));
    field.t.push_back(path.t[i]);
    field.q.push_back(q);
    field.v.push_back(q.cross(axis).normalized());
  }

  constexpr int kMaxDepth = 12;
  constexpr double kMinNorm = 0.5;
  struct Knot {
    double t;
    Point3 q;
    Vec3 v;
  };
  std::vector<Knot> out;
  for (std::size_t i = 0; i + 1 < field.t.size(); ++i) {
    // Depth-first refinement of [i, i+1], emitting knots in order.
    struct Job {
      Knot a;
      Knot b;
      int depth;
    };
    std::vector<Job> stack;
    stack.push_back({{field.t[i], field.q[i], field.v[i]},
                     {field.t[i + 1], field.q[i + 1], field.v[i + 1]},
                     0});
    out.push_back(stack.back().a);
    while (!stack.empty()) {
      Job job = stack.back();
      stack.pop_back();
      if (min_blend_norm(job.a.q, job.b.q, job.a.v, job.b.v) >= kMinNorm) {
        out.push_back(job.b);
        continue;
      }
      if (job.depth >= kMaxDepth) fail(Errc::SubdivisionLimit);
      Knot mid;
      mid.t = 0.5 * (job.a.t + job.b.t);
      mid.q = 0.5 * (job.a.q + job.b.q);
      if (mid.q.norm() <= tiny) fail(Errc::InvalidArgument, "path passes through the origin");
      mid.v = midpoint_vector(mid.q, job.a.v, job.b.v);
      stack.push_back({mid, job.b, job.depth + 1});
      stack.push_back({job.a, mid, job.depth + 1});
    }
  }
  if (field.t.size() == 1) out.push_back({field.t[0], field.q[0], field.v[0]});
  field.t.clear();
  field.q.clear();
  field.v.clear();
  for (const auto& k : out) {
    field.t.push_back(k.t);
    field.q.push_back(k.q);
    field.v.push_back(k.v);
  }
  return field;
}

FrameField::Sample FrameField::eval(double tt) const {
  if (t.empty()) fail(Errc::InvalidArgument, "empty frame field");
  std::size_t j = 1;
  double tau = 0.0;
  if (t.size() == 1) {
    return {q[0], v[0], 1.0};
  }
  if (tt <= t.front()) {
    j = 1;
    tau = 0.0;
  } else if (tt >= t.back()) {
    j = t.size() - 1;
    tau = 1.0;
  } else {
    j = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tt) - t.begin());
    const double span = t[j] - t[j - 1];
    tau = span > 0.0 ? (tt - t[j - 1]) / span : 0.0;
  }
  Sample s;
  s.q = (1.0 - tau) * q[j - 1] + tau * q[j];
  const Vec3 h = project_perp((1.0 - tau) * v[j - 1] + tau * v[j], s.q);
  s.raw_norm = h.norm();
  s.v = h / s.raw_norm;
  // One cleanup pass keeps perpendicularity at the 1e-16 level.
  s.v = project_perp(s.v, s.q).normalized();
  return s;
}

Plane3 Plane3::make(const Eigen::Vector3d& n, double offset) {
  const double len = n.norm();
  if (!(len > 0.0) || !n.allFinite() || !std::isfinite(offset)) {
    fail(Errc::InvalidArgument, "plane needs a nonzero finite normal");
  }
  return {n / len, offset / len};
}

PlaneFrame PlaneFrame::of(const Plane3& plane) {
  PlaneFrame f;
  const Vec3& n = plane.normal;
  const Vec3 axis = Vec3::Unit(least_aligned_axis(n));
  f.e1 = (axis - axis.dot(n) * n).normalized();
  f.e2 = n.cross(f.e1);
  f.origin = plane.offset * n;
  return f;
}

CrossSection cross_section(const Polyhedron3& poly, const Plane3& plane) {
  const double eps = 1e-9 * poly.diameter();
  const int nv = static_cast<int>(poly.vertices().size());
  std::vector<double> sd(idx(nv));
  for (int v = 0; v < nv; ++v) {
    const double s = plane.normal.dot(poly.vertex(v)) - plane.offset;
    sd[idx(v)] = std::abs(s) <= eps ? 0.0 : s;
  }
  auto sign = [&](int v) { return sd[idx(v)] > 0.0 ? 1 : (sd[idx(v)] < 0.0 ? -1 : 0); };

  // Section nodes are mesh vertices (a, -1) or mesh edges (a < b).
  using Node = std::pair<int, int>;
  auto vertex_node = [](int a) { return Node{a, -1}; };
  auto edge_node = [](int a, int b) { return Node{std::min(a, b), std::max(a, b)}; };
  std::map<std::pair<Node, Node>, std::vector<int>> segs;  // -> faces
  auto add_seg = [&](Node a, Node b, int face) {
    if (b < a) std::swap(a, b);
    segs[{a, b}].push_back(face);
  };

  for (const auto& t : poly.triangles()) {
    const int a = t.v[0];
    const int b = t.v[1];
    const int c = t.v[2];
    const int sa = sign(a);
    const int sb = sign(b);
    const int sc = sign(c);
    const int zeros = (sa == 0) + (sb == 0) + (sc == 0);
    if (zeros == 3) fail(Errc::DegenerateSection, "a face lies in the plane");
    std::array<int, 3> vs{a, b, c};
    std::array<int, 3> ss{sa, sb, sc};
    if (zeros == 2) {
      int k = 0;
      while (ss[idx(k)] == 0) ++k;
      // In-plane edge: count it once, from the triangle on the positive side.
      if (ss[idx(k)] > 0) {
        add_seg(vertex_node(vs[idx((k + 1) % 3)]), vertex_node(vs[idx((k + 2) % 3)]), t.face);
      }
      continue;
    }
    std::vector<Node> ends;
    for (int k = 0; k < 3; ++k) {
      const int u = vs[idx(k)];
      const int w = vs[idx((k + 1) % 3)];
      if (ss[idx(k)] == 0) ends.push_back(vertex_node(u));
      if (ss[idx(k)] * ss[idx((k + 1) % 3)] < 0) ends.push_back(edge_node(u, w));
    }
    if (ends.size() == 2) add_seg(ends[0], ends[1], t.face);
  }

  std::map<Node, std::vector<std::pair<Node, int>>> adj;
  for (const auto& [ab, faces] : segs) {
    if (faces.size() != 1) continue;  // edge grazed from both sides
    adj[ab.first].push_back({ab.second, faces[0]});
    adj[ab.second].push_back({ab.first, faces[0]});
  }
  if (adj.empty()) fail(Errc::DegenerateSection, "plane misses the surface");
  for (const auto& [n, nb] : adj) {
    if (nb.size() != 2) fail(Errc::DegenerateSection, "section is not a union of loops");
  }

  auto node_point = [&](const Node& n) -> Point3 {
    if (n.second < 0) {
      const Point3& p = poly.vertex(n.first);
      return p - (plane.normal.dot(p) - plane.offset) * plane.normal;
    }
    const Point3& p = poly.vertex(n.first);
    const Point3& q = poly.vertex(n.second);
    const double a = sd[idx(n.first)];
    const double b = sd[idx(n.second)];
    return p + (a / (a - b)) * (q - p);
  };

  const PlaneFrame frame = PlaneFrame::of(plane);
  const Point2 center = frame.project(plane.offset * plane.normal);
  std::map<Node, bool> seen;
  std::optional<CrossSection> best;
  double best_area = std::numeric_limits<double>::infinity();
  for (const auto& [start, nb0] : adj) {
    if (seen[start]) continue;
    std::vector<Point2> loop;
    std::vector<int> faces;
    Node prev = start;
    Node cur = nb0[0].first;
    loop.push_back(frame.project(node_point(start)));
    faces.push_back(nb0[0].second);
    seen[start] = true;
    while (cur != start) {
      seen[cur] = true;
      const auto& nb = adj[cur];
      const auto& next = nb[0].first == prev ? nb[1] : nb[0];
      loop.push_back(frame.project(node_point(cur)));
      faces.push_back(next.second);
      prev = cur;
      cur = next.first;
    }
    // Drop breakpoints interior to one face (triangulation diagonals).
    std::vector<Point2> pts;
    std::vector<int> fids;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (faces[(i + n - 1) % n] == faces[i] && n > 3) continue;
      pts.push_back(loop[i]);
      fids.push_back(faces[i]);
    }
    if (pts.size() < 3) continue;
    double area2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      area2 += cross2(pts[i], pts[(i + 1) % pts.size()]);
    }
    // Orient counterclockwise, keeping edge faces aligned.
    if (area2 < 0.0) {
      const std::size_t m = pts.size();
      std::vector<Point2> rp(m);
      std::vector<int> rf(m);
      for (std::size_t i = 0; i < m; ++i) {
        rp[i] = pts[m - 1 - i];
        rf[i] = fids[(2 * m - 2 - i) % m];
      }
      pts = std::move(rp);
      fids = std::move(rf);
    }
    const double area = std::abs(area2) / 2.0;
    if (area >= best_area) continue;
    Polygon2 poly2 = validate_polygon(pts);
    if (locate_point(poly2, center, eps).side == Side::Outside) continue;
    best_area = area;
    best = CrossSection{std::move(poly2), std::move(fids), frame};
  }
  if (!best) fail(Errc::NoLoopContainsOrigin);
  return std::move(*best);
}

}  // namespace wbal
