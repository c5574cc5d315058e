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

#ifndef WBAL_GEOM3D_HPP_
#define WBAL_GEOM3D_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "wbal/geom2d.hpp"

namespace wbal {

using Point3 = Eigen::Vector3d;

struct Triangle3 {
  std::array<int, 3> v{};
  int face = 0;  // index of the original (possibly non-triangular) face
};

/// Closed, consistently outward-oriented polyhedral surface with planar
/// faces. Faces are fan-triangulated; each triangle remembers its face.
class Polyhedron3 {
 public:
  const std::vector<Point3>& vertices() const { return vertices_; }
  const Point3& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<Triangle3>& triangles() const { return triangles_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  /// Outward unit normal and offset of face f's supporting plane n.x = d.
  const Eigen::Vector3d& face_normal(int f) const { return normals_[static_cast<std::size_t>(f)]; }
  double face_offset(int f) const { return offsets_[static_cast<std::size_t>(f)]; }

  /// Diagonal of the bounding box.
  double diameter() const { return diameter_; }

 private:
  friend Polyhedron3 validate_polyhedron(std::vector<Point3> vertices,
                                         std::vector<std::vector<int>> faces);
  Polyhedron3() = default;

  std::vector<Point3> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<Triangle3> triangles_;
  std::vector<Eigen::Vector3d> normals_;
  std::vector<double> offsets_;
  double diameter_ = 0.0;
};

/// Checks closedness and planarity (within 1e-9 * diam), orients faces
/// outward, and triangulates.
Polyhedron3 validate_polyhedron(std::vector<Point3> vertices,
                                std::vector<std::vector<int>> faces);

Polyhedron3 load_off(std::string_view text);
std::string format_off(const Polyhedron3& poly);

/// Point on the surface: barycentric coordinates in one triangle.
struct SurfacePoint3 {
  int face = 0;
  int triangle = 0;
  Eigen::Vector3d bary = Eigen::Vector3d(1.0, 0.0, 0.0);
};

Point3 eval_surface(const Polyhedron3& poly, const SurfacePoint3& sp);

/// Surface point located at vertex v (first triangle using it).
SurfacePoint3 surface_point_at_vertex(const Polyhedron3& poly, int v);

struct NearestSurface {
  SurfacePoint3 at;
  double distance = 0.0;
};

/// Nearest point over all triangles, ties towards the smaller triangle index.
NearestSurface nearest_surface_point(const Polyhedron3& poly, const Point3& p);

struct PointLocation3 {
  Side side = Side::Outside;
  SurfacePoint3 at;  // nearest surface point
  double distance = 0.0;
};

PointLocation3 side3(const Polyhedron3& poly, const Point3& p, double eps);

/// Distance to the surface, negative inside.
double signed_distance(const Polyhedron3& poly, const Point3& p);

struct ExtremePoints {
  SurfacePoint3 nearest;
  SurfacePoint3 farthest;
  double r_min = 0.0;
  double r_max = 0.0;
};

/// Nearest and farthest surface points from the origin.
/// Fails with OriginOutside or OriginOnBoundary (distance <= eps).
ExtremePoints extreme_boundary_points(const Polyhedron3& poly, double eps);

/// Piecewise-linear path on the surface, parametrized by normalized arc length.
struct SurfacePath {
  std::vector<SurfacePoint3> points;
  std::vector<Point3> xyz;
  std::vector<double> t;  // t.front() == 0, t.back() == 1

  Point3 eval(double tt) const;
};

SurfacePath surface_path(const Polyhedron3& poly, const SurfacePoint3& p0,
                         const SurfacePoint3& p1);

/// Unit vector field along a path, perpendicular to the position vector.
/// Knots refine the path's breakpoints; between knots the field is the
/// normalized projection of the linear blend of the knot vectors.
struct FrameField {
  std::vector<double> t;
  std::vector<Point3> q;
  std::vector<Eigen::Vector3d> v;

  struct Sample {
    Point3 q;
    Eigen::Vector3d v;
    double raw_norm = 0.0;  // norm of the projection before normalizing
  };
  Sample eval(double tt) const;
};

FrameField frame_field(const SurfacePath& path);

struct Plane3 {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;

  /// Normalizes n; fails with InvalidArgument for a zero normal.
  static Plane3 make(const Eigen::Vector3d& n, double offset = 0.0);
};

/// Orthonormal frame of a plane: point(u, w) = origin + u * e1 + w * e2.
struct PlaneFrame {
  Point3 origin = Point3::Zero();
  Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();

  static PlaneFrame of(const Plane3& plane);
  Point3 embed(const Point2& p) const { return origin + p.x() * e1 + p.y() * e2; }
  Point2 project(const Point3& p) const {
    return {(p - origin).dot(e1), (p - origin).dot(e2)};
  }
};

struct CrossSection {
  Polygon2 polygon;
  std::vector<int> edge_face;  // host face of each polygon edge
  PlaneFrame frame;
};

/// Section loop around the plane's point nearest the origin.
CrossSection cross_section(const Polyhedron3& poly, const Plane3& plane);

/// Closest point on triangle abc to p, with barycentric coordinates.
Eigen::Vector3d closest_point_barycentric(const Point3& p, const Point3& a,
                                          const Point3& b, const Point3& c);

}  // namespace wbal

#endif  // WBAL_GEOM3D_HPP_
