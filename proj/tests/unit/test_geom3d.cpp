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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wbal/error.hpp"
#include "wbal/fixtures.hpp"
#include "wbal/geom3d.hpp"

namespace wbal {
namespace {

const char* kCubeOff =
    "OFF\n8 6 0\n"
    "-1 -1 -1\n1 -1 -1\n-1 1 -1\n1 1 -1\n-1 -1 1\n1 -1 1\n-1 1 1\n1 1 1\n"
    "4 0 2 3 1\n4 4 5 7 6\n4 0 1 5 4\n4 2 6 7 3\n4 0 4 6 2\n4 1 3 7 5\n";

Errc error_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

// Generalized winding number: total signed solid angle of the triangles seen
// from p, over 4 pi.
double winding_number(const Polyhedron3& poly, const Point3& p) {
  double total = 0.0;
  for (const auto& t : poly.triangles()) {
    const Point3 a = poly.vertex(t.v[0]) - p;
    const Point3 b = poly.vertex(t.v[1]) - p;
    const Point3 c = poly.vertex(t.v[2]) - p;
    const double la = a.norm(), lb = b.norm(), lc = c.norm();
    const double num = a.dot(b.cross(c));
    const double den = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
    total += 2.0 * std::atan2(num, den);
  }
  return total / (4.0 * std::numbers::pi);
}

double brute_surface_distance(const Polyhedron3& poly, const Point3& p) {
  double best = INFINITY;
  for (const auto& t : poly.triangles()) {
    const Point3 a = poly.vertex(t.v[0]), b = poly.vertex(t.v[1]), c = poly.vertex(t.v[2]);
    // Dense barycentric grid, good to about diam / 400.
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        const Point3 q = a + (b - a) * (double(i) / n) + (c - a) * (double(j) / n);
        best = std::min(best, (q - p).norm());
      }
    }
  }
  return best;
}

std::vector<Polyhedron3> all_fixtures() {
  return {fixtures::cube(), fixtures::octahedron(), fixtures::simplex(),
          fixtures::random_convex_mesh(30, 4), fixtures::star_mesh(5, 8, 7)};
}

TEST(Geom3d, LoadOff) {
  const Polyhedron3 cube = load_off(kCubeOff);
  EXPECT_EQ(cube.vertices().size(), 8u);
  EXPECT_EQ(cube.num_faces(), 6);
  EXPECT_EQ(cube.triangles().size(), 12u);
  const Polyhedron3 tet = load_off(
      "OFF\n4 4 0\n3 0 0\n0 3 0\n0 0 3\n-1 -1 -1\n3 0 1 2\n3 0 3 1\n3 1 3 2\n3 2 3 0\n");
  EXPECT_EQ(tet.num_faces(), 4);
}

TEST(Geom3d, LoadOffErrors) {
  std::string open = kCubeOff;
  open = open.substr(0, open.rfind("4 1 3 7 5"));
  open.replace(open.find("8 6 0"), 5, "8 5 0");
  EXPECT_EQ(error_of([&] { load_off(open); }), Errc::OpenSurface);
  std::string bent = kCubeOff;
  bent.replace(bent.find("1 1 1\n"), 6, "1 1 1.5\n");
  EXPECT_EQ(error_of([&] { load_off(bent); }), Errc::NonPlanarFace);
  EXPECT_EQ(error_of([] { load_off("OFF\n8 6\n1 2\n"); }), Errc::ParseError);
}

TEST(Geom3d, OffRoundTripIsBitExact) {
  const Polyhedron3 a = fixtures::random_convex_mesh(20, 9);
  const Polyhedron3 b = load_off(format_off(a));
  ASSERT_EQ(a.vertices().size(), b.vertices().size());
  for (std::size_t i = 0; i < a.vertices().size(); ++i) EXPECT_EQ(a.vertices()[i], b.vertices()[i]);
  EXPECT_EQ(a.faces(), b.faces());
}

TEST(Geom3d, OutwardNormals) {
  for (const auto& p : all_fixtures()) {
    // Winding number 1 inside means the orientation is outward.
    EXPECT_NEAR(winding_number(p, Point3(0.01, 0.02, 0.03)), 1.0, 1e-9);
  }
}

TEST(Geom3d, Side3Examples) {
  const Polyhedron3 cube = fixtures::cube();
  EXPECT_EQ(side3(cube, {0, 0, 0}, 1e-9).side, Side::Inside);
  EXPECT_EQ(side3(cube, {1, 0, 0}, 1e-9).side, Side::OnBoundary);
  EXPECT_EQ(side3(cube, {3, 0, 0}, 1e-9).side, Side::Outside);
}

TEST(Geom3d, Side3MatchesWindingNumber) {
  std::mt19937_64 rng(17);
  for (const auto& p : all_fixtures()) {
    const double r = p.diameter();
    std::uniform_real_distribution<double> u(-0.6 * r, 0.6 * r);
    int compared = 0;
    for (int k = 0; k < 1000; ++k) {
      const Point3 x(u(rng), u(rng), u(rng));
      const PointLocation3 loc = side3(p, x, 1e-9 * r);
      if (loc.side == Side::OnBoundary) continue;
      const bool inside = winding_number(p, x) > 0.5;
      EXPECT_EQ(loc.side == Side::Inside, inside) << x.transpose();
      ++compared;
    }
    EXPECT_GT(compared, 990);
  }
}

TEST(Geom3d, SignedDistanceExamples) {
  const Polyhedron3 cube = fixtures::cube();
  EXPECT_NEAR(signed_distance(cube, {0, 0, 0}), -1.0, 1e-12);
  EXPECT_NEAR(signed_distance(cube, {2, 0, 0}), 1.0, 1e-12);
  EXPECT_NEAR(signed_distance(cube, {1, 0.5, 0.5}), 0.0, 1e-12);
}

TEST(Geom3d, SignedDistanceAgreesWithSide3) {
  std::mt19937_64 rng(5);
  for (const auto& p : all_fixtures()) {
    const double eps = 1e-9 * p.diameter();
    std::uniform_real_distribution<double> u(-0.6 * p.diameter(), 0.6 * p.diameter());
    for (int k = 0; k < 200; ++k) {
      const Point3 x(u(rng), u(rng), u(rng));
      const double sd = signed_distance(p, x);
      const Side s = side3(p, x, eps).side;
      EXPECT_EQ(std::abs(sd) <= eps, s == Side::OnBoundary);
      if (s == Side::Inside) EXPECT_LT(sd, 0.0);
      if (s == Side::Outside) EXPECT_GT(sd, 0.0);
    }
    // Surface samples: exactly the zero set.
    for (const auto& t : p.triangles()) {
      const Point3 q = (p.vertex(t.v[0]) + p.vertex(t.v[1]) + 2.0 * p.vertex(t.v[2])) / 4.0;
      EXPECT_LE(std::abs(signed_distance(p, q)), eps);
      EXPECT_EQ(side3(p, q, eps).side, Side::OnBoundary);
    }
  }
}

TEST(Geom3d, NearestSurfaceMatchesDenseSampling) {
  std::mt19937_64 rng(8);
  const Polyhedron3 p = fixtures::simplex();
  std::uniform_real_distribution<double> u(-2, 4);
  for (int k = 0; k < 10; ++k) {
    const Point3 x(u(rng), u(rng), u(rng));
    const double d = nearest_surface_point(p, x).distance;
    const double oracle = brute_surface_distance(p, x);
    EXPECT_LE(d, oracle + 1e-12);
    EXPECT_GE(d, oracle - p.diameter() / 200.0);
  }
}

TEST(Geom3d, ExtremePointsCube) {
  const Polyhedron3 cube = fixtures::cube();
  const ExtremePoints e = extreme_boundary_points(cube, 1e-9);
  EXPECT_NEAR(e.r_min, 1.0, 1e-12);
  EXPECT_NEAR(e.r_max, std::sqrt(3.0), 1e-12);
  EXPECT_EQ(e.nearest.face, 0);
  const Point3 c = eval_surface(cube, e.nearest);
  EXPECT_NEAR(c.norm(), 1.0, 1e-12);
  EXPECT_NEAR(c.cwiseAbs().maxCoeff(), 1.0, 1e-12);
  EXPECT_NEAR(c.cwiseAbs().sum(), 1.0, 1e-12);  // a face center
}

TEST(Geom3d, ExtremePointsSimplex) {
  // Oracle: the origin is inside a convex body, so the nearest boundary
  // distance is the smallest face-plane distance; farthest is a vertex.
  const Polyhedron3 p = fixtures::simplex();
  double plane_min = INFINITY, vert_max = 0.0;
  for (int f = 0; f < p.num_faces(); ++f) {
    const Point3 a = p.vertex(p.faces()[f][0]), b = p.vertex(p.faces()[f][1]),
                 c = p.vertex(p.faces()[f][2]);
    const Point3 n = (b - a).cross(c - a).normalized();
    plane_min = std::min(plane_min, std::abs(n.dot(a)));
  }
  for (const auto& v : p.vertices()) vert_max = std::max(vert_max, v.norm());
  const ExtremePoints e = extreme_boundary_points(p, 1e-9);
  EXPECT_NEAR(e.r_min, plane_min, 1e-12);
  EXPECT_NEAR(e.r_max, vert_max, 1e-12);
  EXPECT_NEAR((eval_surface(p, e.farthest) - Point3(3, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(Geom3d, ExtremePointsNeedInteriorOrigin) {
  std::vector<Point3> v;
  for (int i = 0; i < 8; ++i) v.emplace_back(i & 1 ? 2.5 : 0.5, i & 2 ? 2.5 : 0.5, i & 4 ? 2.5 : 0.5);
  const Polyhedron3 shifted = validate_polyhedron(
      v, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
  EXPECT_EQ(error_of([&] { extreme_boundary_points(shifted, 1e-9); }), Errc::OriginOutside);
  std::vector<Point3> w;
  for (int i = 0; i < 8; ++i) w.emplace_back(i & 1 ? 2.0 : 0.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0);
  const Polyhedron3 touching = validate_polyhedron(
      w, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
  EXPECT_EQ(error_of([&] { extreme_boundary_points(touching, 1e-9); }), Errc::OriginOnBoundary);
}

TEST(Geom3d, SurfacePathContract) {
  for (const auto& p : all_fixtures()) {
    const ExtremePoints e = extreme_boundary_points(p, 1e-9 * p.diameter());
    const SurfacePath path = surface_path(p, e.nearest, e.farthest);
    ASSERT_GE(path.xyz.size(), 2u);
    EXPECT_EQ(path.t.front(), 0.0);
    EXPECT_EQ(path.t.back(), 1.0);
    EXPECT_LE((path.eval(0.0) - eval_surface(p, e.nearest)).norm(), 1e-12);
    EXPECT_LE((path.eval(1.0) - eval_surface(p, e.farthest)).norm(), 1e-12);
    double length = 0.0;
    for (std::size_t i = 1; i < path.xyz.size(); ++i) length += (path.xyz[i] - path.xyz[i - 1]).norm();
    EXPECT_GE(length, (path.xyz.back() - path.xyz.front()).norm() - 1e-12);
    for (int k = 0; k <= 500; ++k) {
      const Point3 q = path.eval(k / 500.0);
      EXPECT_EQ(side3(p, q, 1e-9 * p.diameter()).side, Side::OnBoundary) << k;
      EXPECT_GT(q.norm(), 0.0);
    }
    for (std::size_t i = 1; i < path.t.size(); ++i) EXPECT_GT(path.t[i], path.t[i - 1]);
  }
}

TEST(Geom3d, SurfacePathOnCube) {
  const Polyhedron3 cube = fixtures::cube();
  const SurfacePoint3 corner = surface_point_at_vertex(cube, 7);
  const ExtremePoints e = extreme_boundary_points(cube, 1e-9);
  const SurfacePath path = surface_path(cube, e.nearest, corner);
  EXPECT_GE(path.xyz.size(), 3u);
  EXPECT_EQ(error_of([&] { surface_path(cube, corner, corner); }), Errc::InvalidArgument);
}

TEST(Geom3d, FrameFieldPerpendicularAndUnit) {
  for (const auto& p : all_fixtures()) {
    const ExtremePoints e = extreme_boundary_points(p, 1e-9 * p.diameter());
    const SurfacePath path = surface_path(p, e.nearest, e.farthest);
    const FrameField f = frame_field(path);
    for (int k = 0; k <= 1000; ++k) {
      const auto s = f.eval(k / 1000.0);
      EXPECT_NEAR(s.v.norm(), 1.0, 1e-12);
      EXPECT_LE(std::abs(s.v.dot(s.q)), 1e-12 * s.q.norm());
      EXPECT_GE(s.raw_norm, 0.5);
      EXPECT_LE((s.q - path.eval(k / 1000.0)).norm(), 1e-12 * p.diameter());
    }
  }
}

TEST(Geom3d, FrameFieldIsContinuous) {
  // Modulus of continuity shrinks with the sampling step.
  const Polyhedron3 cube = fixtures::cube();
  const ExtremePoints e = extreme_boundary_points(cube, 1e-9);
  const FrameField f = frame_field(surface_path(cube, e.nearest, e.farthest));
  double prev = INFINITY;
  for (int n : {100, 1000, 10000}) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) worst = std::max(worst, (f.eval((k + 1.0) / n).v - f.eval(double(k) / n).v).norm());
    EXPECT_LT(worst, prev);
    prev = worst;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Geom3d, FrameFieldSubdividesAdversarialSegment) {
  // Endpoint vectors are (0,1,3) and (3,-1,0) over sqrt(10); their blend
  // swings close to the position vector, which forces midpoint insertion.
  SurfacePath path;
  path.xyz = {Point3(0, -3, 1), Point3(1, 3, 0)};
  path.points.resize(2);
  path.t = {0.0, 1.0};
  const FrameField f = frame_field(path);
  EXPECT_GT(f.t.size(), 2u);
  for (int k = 0; k <= 200; ++k) {
    const auto s = f.eval(k / 200.0);
    EXPECT_GE(s.raw_norm, 0.5);
    EXPECT_NEAR(s.v.norm(), 1.0, 1e-12);
    EXPECT_LE(std::abs(s.v.dot(s.q)), 1e-12 * s.q.norm());
  }
}

TEST(Geom3d, CrossSectionCubeZ) {
  const CrossSection cs = cross_section(fixtures::cube(), Plane3::make({0, 0, 1}));
  EXPECT_EQ(cs.polygon.size(), 4);
  EXPECT_NEAR(cs.polygon.signed_area(), 4.0, 1e-12);
  for (const auto& v : cs.polygon.vertices()) {
    const Point3 x = cs.frame.embed(v);
    EXPECT_NEAR(x.z(), 0.0, 1e-12);
    EXPECT_NEAR(x.x() * x.x(), 1.0, 1e-12);
    EXPECT_NEAR(x.y() * x.y(), 1.0, 1e-12);
  }
}

TEST(Geom3d, CrossSectionCubeDiagonal) {
  // Oracle: intersect each of the 12 cube edges with x + y + z = 0.
  const Polyhedron3 cube = fixtures::cube();
  std::vector<Point3> expect;
  for (int i = 0; i < 8; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      if (i >> axis & 1) continue;
      const Point3 a = cube.vertex(i), b = cube.vertex(i | 1 << axis);
      const double fa = a.sum(), fb = b.sum();
      if ((fa < 0) != (fb < 0) && fa != fb) expect.push_back(a + (b - a) * (fa / (fa - fb)));
    }
  }
  ASSERT_EQ(expect.size(), 6u);
  const CrossSection cs = cross_section(cube, Plane3::make({1, 1, 1}));
  ASSERT_EQ(cs.polygon.size(), 6);
  for (const auto& v : cs.polygon.vertices()) {
    const Point3 x = cs.frame.embed(v);
    double best = INFINITY;
    for (const auto& e : expect) best = std::min(best, (e - x).norm());
    EXPECT_LE(best, 1e-12);
  }
}

TEST(Geom3d, CrossSectionLiesOnSurface) {
  for (const auto& p : all_fixtures()) {
    for (const Eigen::Vector3d& n : {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0.3, -0.2, 1.0)}) {
      const CrossSection cs = cross_section(p, Plane3::make(n));
      EXPECT_EQ(locate_point(cs.polygon, cs.frame.project(Point3::Zero()), 1e-9).side, Side::Inside);
      for (int i = 0; i < cs.polygon.size(); ++i) {
        for (double s : {0.0, 0.3, 0.7}) {
          const Point3 x = cs.frame.embed(eval_boundary(cs.polygon, {i, s}));
          EXPECT_EQ(side3(p, x, 1e-9 * p.diameter()).side, Side::OnBoundary);
          EXPECT_NEAR(x.dot(n.normalized()), 0.0, 1e-12 * p.diameter());
        }
      }
    }
  }
}

TEST(Geom3d, CrossSectionErrors) {
  const Polyhedron3 cube = fixtures::cube();
  EXPECT_EQ(error_of([&] { cross_section(cube, Plane3::make({0, 0, 1}, 1.0)); }),
            Errc::DegenerateSection);
  EXPECT_EQ(error_of([&] { cross_section(cube, Plane3::make({0, 0, 1}, 5.0)); }),
            Errc::DegenerateSection);
  EXPECT_EQ(error_of([] { Plane3::make({0, 0, 0}); }), Errc::InvalidArgument);
}

}  // namespace
}  // namespace wbal
