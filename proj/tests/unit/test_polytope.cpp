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
#include <map>
#include <random>
#include <vector>

#include "wbal/error.hpp"
#include "wbal/fixtures.hpp"
#include "wbal/lp.hpp"
#include "wbal/polytope.hpp"

namespace wbal {
namespace {

Errc error_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

HPolytope octahedron_h() {
  MatX a(8, 3);
  for (int i = 0; i < 8; ++i) a.row(i) << (i & 1 ? -1 : 1), (i & 2 ? -1 : 1), (i & 4 ? -1 : 1);
  return HPolytope(a, VecX::Ones(8));
}

HPolytope square_h() { return fixtures::hypercube(2); }

HPolytope simplex_h() { return fixtures::hrep_of_mesh(fixtures::simplex()); }

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Support function through the LP solver, a separate code path from vertex
// enumeration.
double lp_support(const HPolytope& h, const VecX& u) {
  LinearProgram lp;
  lp.c = -u;
  lp.A_ub = h.normals();
  lp.b_ub = h.offsets();
  const LpResult r = solve_lp(lp);
  EXPECT_EQ(r.status, LpStatus::Optimal);
  return -r.value;
}

TEST(Polytope, ValidateHrep) {
  const HPolytope cube4 = validate_hrep(fixtures::hypercube(4));
  EXPECT_TRUE(cube4.origin_interior());
  MatX half(1, 2);
  half << 1, 0;
  EXPECT_EQ(error_of([&] { validate_hrep(HPolytope(half, VecX::Ones(1))); }), Errc::Unbounded);
  MatX slab(3, 2);
  slab << 1, 0, -1, 0, 1, 0.0001;
  EXPECT_EQ(error_of([&] { validate_hrep(HPolytope(slab, VecX::Ones(3))); }), Errc::Unbounded);
  HPolytope shifted = fixtures::hypercube(3);
  VecX b = shifted.offsets();
  b(2) = -2;  // pushes a facet past the opposite one: empty
  EXPECT_EQ(error_of([&] { validate_hrep(HPolytope(shifted.normals(), b)); }), Errc::EmptyInterior);
  b(2) = -0.5;  // x <= -0.5 still leaves a box, origin outside
  const HPolytope moved = validate_hrep(HPolytope(shifted.normals(), b));
  EXPECT_FALSE(moved.origin_interior());
}

TEST(Polytope, VertexCountsOnFixtures) {
  const VRep sq = enumerate_vertices(square_h());
  EXPECT_EQ(sq.vertices.size(), 4u);
  for (const auto& t : sq.tight) EXPECT_EQ(t.size(), 2u);

  const VRep h4 = enumerate_vertices(fixtures::hypercube(4));
  EXPECT_EQ(h4.vertices.size(), 16u);
  for (const auto& t : h4.tight) EXPECT_EQ(t.size(), 4u);

  const VRep oct = enumerate_vertices(octahedron_h());
  EXPECT_EQ(oct.vertices.size(), 6u);
  for (const auto& t : oct.tight) EXPECT_EQ(t.size(), 4u);
}

TEST(Polytope, FaceCountsMatchClosedForms) {
  for (int d = 2; d <= 5; ++d) {
    const HPolytope h = fixtures::hypercube(d);
    const VRep v = enumerate_vertices(h);
    for (int k = 0; k < d; ++k) {
      EXPECT_EQ(static_cast<long long>(faces_of_dim(h, v, k).size()), binom(d, k) << (d - k))
          << "d " << d << " k " << k;
    }
  }
  const HPolytope oct = octahedron_h();
  const VRep ov = enumerate_vertices(oct);
  EXPECT_EQ(faces_of_dim(oct, ov, 0).size(), 6u);
  EXPECT_EQ(faces_of_dim(oct, ov, 1).size(), 12u);
  EXPECT_EQ(faces_of_dim(oct, ov, 2).size(), 8u);
  const HPolytope sx = simplex_h();
  const VRep sv = enumerate_vertices(sx);
  EXPECT_EQ(faces_of_dim(sx, sv, 0).size(), 4u);
  EXPECT_EQ(faces_of_dim(sx, sv, 1).size(), 6u);
  EXPECT_EQ(faces_of_dim(sx, sv, 2).size(), 4u);
  for (const FaceD& e : faces_of_dim(fixtures::hypercube(3), enumerate_vertices(fixtures::hypercube(3)), 1)) {
    EXPECT_EQ(e.vertices.size(), 2u);
    EXPECT_EQ(e.basis.cols(), 1);
  }
}

TEST(Polytope, SkeletonGraphs) {
  auto degrees = [](const SkeletonGraph& g) {
    std::map<std::size_t, int> hist;
    for (const auto& a : g.adjacency) hist[a.size()]++;
    return hist;
  };
  const HPolytope cube = fixtures::hypercube(3);
  const SkeletonGraph gc = skeleton_graph(cube, enumerate_vertices(cube));
  EXPECT_EQ(gc.nodes, 8);
  EXPECT_EQ(degrees(gc), (std::map<std::size_t, int>{{3, 8}}));
  const HPolytope h4 = fixtures::hypercube(4);
  const SkeletonGraph g4 = skeleton_graph(h4, enumerate_vertices(h4));
  EXPECT_EQ(g4.nodes, 16);
  EXPECT_EQ(degrees(g4), (std::map<std::size_t, int>{{4, 16}}));
  const HPolytope sx = simplex_h();
  const SkeletonGraph gs = skeleton_graph(sx, enumerate_vertices(sx));
  EXPECT_EQ(gs.edges.size(), 6u);
  EXPECT_EQ(degrees(gs), (std::map<std::size_t, int>{{3, 4}}));
  const std::vector<int> path = skeleton_path(gc, 0, 7);
  EXPECT_EQ(path.size(), 4u);  // antipodal cube corners are 3 edges apart
  EXPECT_EQ(path.front(), 0);
  EXPECT_EQ(path.back(), 7);
}

TEST(Polytope, SupportFunctionMatchesLp) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  std::vector<HPolytope> cases = {fixtures::hypercube(4), octahedron_h(), simplex_h()};
  for (int d = 2; d <= 6; ++d) cases.push_back(fixtures::random_hpolytope(d, d + 5, 10 + d));
  for (const HPolytope& h : cases) {
    const VRep v = enumerate_vertices(h);
    for (int k = 0; k < 100; ++k) {
      VecX u(h.dim());
      for (int i = 0; i < h.dim(); ++i) u(i) = g(rng);
      u.normalize();
      double best = -INFINITY;
      for (const auto& x : v.vertices) best = std::max(best, u.dot(x));
      EXPECT_NEAR(best, lp_support(h, u), 1e-8);
    }
  }
}

TEST(Polytope, PivotingMatchesBruteForce) {
  std::vector<HPolytope> cases = {fixtures::hypercube(4), octahedron_h(), simplex_h(),
                                  intersect(simplex_h(), reflect(simplex_h())),
                                  intersect(octahedron_h(), reflect(octahedron_h()))};
  for (int d = 2; d <= 5; ++d) {
    for (std::uint64_t s = 0; s < 5; ++s) cases.push_back(fixtures::random_hpolytope(d, d + 4, s));
  }
  for (const HPolytope& h : cases) {
    const VRep a = enumerate_vertices(h);
    const VRep b = enumerate_vertices_brute(h);
    ASSERT_EQ(a.vertices.size(), b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
      EXPECT_LE((a.vertices[i] - b.vertices[i]).norm(), 1e-9 * (1.0 + a.diameter));
      EXPECT_EQ(a.tight[i], b.tight[i]);
    }
  }
}

TEST(Polytope, VerticesAreFeasibleAndTight) {
  for (int d = 2; d <= 6; ++d) {
    const HPolytope h = fixtures::random_hpolytope(d, d + 3, 77);
    const VRep v = enumerate_vertices(h);
    for (std::size_t i = 0; i < v.vertices.size(); ++i) {
      EXPECT_TRUE(h.contains(v.vertices[i], v.eps_tight));
      MatX rows(static_cast<int>(v.tight[i].size()), d);
      for (std::size_t r = 0; r < v.tight[i].size(); ++r) rows.row(static_cast<int>(r)) = h.normals().row(v.tight[i][r]);
      EXPECT_EQ(matrix_rank(rows), d);
    }
  }
}

TEST(Polytope, ReflectAndIntersect) {
  const HPolytope cube = fixtures::hypercube(3);
  const HPolytope twice = reflect(reflect(cube));
  EXPECT_EQ(twice.normals(), cube.normals());
  EXPECT_EQ(twice.offsets(), cube.offsets());
  const HPolytope neg = reflect(cube);
  for (int i = 0; i < neg.rows(); ++i) EXPECT_EQ(neg.provenance()[static_cast<std::size_t>(i)], Provenance::FromNegP);
  EXPECT_EQ(neg.normals(), -cube.normals());

  const HPolytope c = intersect(cube, neg);
  EXPECT_EQ(c.rows(), 12);
  EXPECT_EQ(enumerate_vertices(c).vertices.size(), 8u);

  const HPolytope sx = simplex_h();
  const HPolytope cs = intersect(sx, reflect(sx));
  EXPECT_EQ(cs.rows(), 8);
  const VRep v = enumerate_vertices(cs);
  for (const auto& x : v.vertices) {
    double best = INFINITY;
    for (const auto& y : v.vertices) best = std::min(best, (x + y).norm());
    EXPECT_LE(best, 1e-9 * v.diameter);  // V = -V
  }

  HPolytope shifted(cube.normals(), (VecX(6) << 1, 1, 1, 1, 1, -0.5).finished());
  EXPECT_EQ(error_of([&] { intersect(cube, shifted); }), Errc::EmptyInterior);
}

TEST(Polytope, Perturb) {
  const HPolytope cube = fixtures::hypercube(3);
  const HPolytope p = perturb(cube, 1e-7, 1);
  for (int i = 0; i < 6; ++i) {
    EXPECT_GT(p.offsets()(i), 1.0);
    EXPECT_LE(p.offsets()(i), 1.0 + 1e-7 + 1e-15);
  }
  EXPECT_EQ(p.normals(), cube.normals());
  const HPolytope same = perturb(cube, 0.0, 1);
  EXPECT_EQ(same.offsets(), cube.offsets());
  EXPECT_EQ(perturb(cube, 1e-7, 1).offsets(), p.offsets());  // seeded

  for (const HPolytope& base : {simplex_h(), octahedron_h()}) {
    const HPolytope c = intersect(base, reflect(base));
    for (double mag : {1e-9, 1e-7, 1e-5}) {
      // The default tight tolerance (1e-8 scale) cannot resolve a 1e-9
      // offset shift, so classify at a tolerance below the perturbation.
      const VRep v = enumerate_vertices(perturb(c, mag, 3), 1e-12);
      for (const auto& t : v.tight) EXPECT_EQ(static_cast<int>(t.size()), 3) << mag;
    }
  }
}

TEST(Polytope, HullOfPoints) {
  std::vector<VecX> corners;
  for (int i = 0; i < 8; ++i) corners.push_back(Eigen::Vector3d(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1));
  EXPECT_EQ(hull_of_points(corners).rows(), 6);
  std::vector<VecX> tet = {Eigen::Vector3d(3, 0, 0), Eigen::Vector3d(0, 3, 0), Eigen::Vector3d(0, 0, 3),
                           Eigen::Vector3d(-1, -1, -1)};
  EXPECT_EQ(hull_of_points(tet).rows(), 4);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<VecX> sphere;
  for (int i = 0; i < 30; ++i) sphere.push_back(Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized());
  const HPolytope h = hull_of_points(sphere);
  EXPECT_TRUE(h.origin_interior());
  for (const auto& x : sphere) EXPECT_TRUE(h.contains(x, 1e-9));
  // On a sphere every point is a hull vertex.
  EXPECT_EQ(enumerate_vertices(h).vertices.size(), 30u);
  EXPECT_EQ(h.rows(), 2 * 30 - 4);  // simplicial: F = 2V - 4

  std::vector<VecX> flat = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
                            Eigen::Vector3d(1, 1, 0)};
  EXPECT_EQ(error_of([&] { hull_of_points(flat); }), Errc::DegenerateSpan);
}

TEST(Polytope, Product) {
  MatX t(3, 2);
  t << -1, 0, 0.5, -std::sqrt(3.0) / 2, 0.5, std::sqrt(3.0) / 2;
  const HPolytope tri(t, VecX::Constant(3, 0.5));
  const HPolytope tt = product(tri, tri);
  EXPECT_EQ(tt.dim(), 4);
  EXPECT_EQ(tt.rows(), 6);
  EXPECT_EQ(enumerate_vertices(tt).vertices.size(), 9u);
  MatX i(2, 1);
  i << 1, -1;
  const HPolytope interval(i, (VecX(2) << 2, 1).finished());
  const HPolytope it = product(interval, tri);
  EXPECT_EQ(it.dim(), 3);
  EXPECT_EQ(it.rows(), 5);
  const HPolytope sq = product(square_h(), square_h());
  EXPECT_EQ(sq.rows(), 8);
  EXPECT_EQ(enumerate_vertices(sq).vertices.size(), 16u);
}

TEST(Polytope, MinimalFace) {
  const HPolytope cube = fixtures::hypercube(3);
  const VRep v = enumerate_vertices(cube);
  EXPECT_EQ(minimal_face(cube, v, Eigen::Vector3d(1, 1, 0.2), 1e-9).dim, 1);
  EXPECT_EQ(minimal_face(cube, v, Eigen::Vector3d(1, 0.3, 0.2), 1e-9).dim, 2);
  EXPECT_EQ(minimal_face(cube, v, Eigen::Vector3d(1, 1, 1), 1e-9).dim, 0);
  EXPECT_EQ(minimal_face(cube, v, Eigen::Vector3d(0, 0, 0), 1e-9).dim, 3);
}

TEST(Polytope, HrepTextRoundTrip) {
  const HPolytope h = fixtures::random_hpolytope(5, 9, 4);
  const HPolytope back = parse_hrep_text(format_hrep_text(h));
  EXPECT_EQ(back.normals(), h.normals());
  EXPECT_EQ(back.offsets(), h.offsets());
  EXPECT_EQ(error_of([] { parse_hrep_text("2 3\n1 0 0 1\n"); }), Errc::ParseError);
}

TEST(Lp, SmallPrograms) {
  LinearProgram lp;
  lp.c = Eigen::Vector2d(-1, -1);
  lp.A_ub = (MatX(3, 2) << 1, 2, 3, 1, -1, 0).finished();
  lp.b_ub = Eigen::Vector3d(4, 6, 0);
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, -2.8, 1e-12);  // vertex (1.6, 1.2)
  EXPECT_NEAR(r.x(0), 1.6, 1e-12);

  LinearProgram unb;
  unb.c = Eigen::Vector2d(-1, 0);
  unb.A_ub = (MatX(1, 2) << 0, 1).finished();
  unb.b_ub = VecX::Ones(1);
  EXPECT_EQ(solve_lp(unb).status, LpStatus::Unbounded);

  LinearProgram inf;
  inf.c = Eigen::Vector2d(0, 0);
  inf.A_ub = (MatX(2, 2) << 1, 0, -1, 0).finished();
  inf.b_ub = Eigen::Vector2d(-1, -1);
  EXPECT_EQ(solve_lp(inf).status, LpStatus::Infeasible);

  LinearProgram eq;
  eq.c = Eigen::Vector2d(1, 2);
  eq.A_eq = (MatX(1, 2) << 1, 1).finished();
  eq.b_eq = VecX::Ones(1);
  eq.nonneg = {0, 1};
  const LpResult re = solve_lp(eq);
  ASSERT_EQ(re.status, LpStatus::Optimal);
  EXPECT_NEAR(re.value, 1.0, 1e-12);
}

}  // namespace
}  // namespace wbal
