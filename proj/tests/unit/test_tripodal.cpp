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
#include <vector>

#include "wbal/error.hpp"
#include "wbal/fixtures.hpp"
#include "wbal/tripodal.hpp"

namespace wbal {
namespace {

constexpr double kPi = std::numbers::pi;

Errc error_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

// Independent certificate: recompute norms, sum and membership from scratch.
void expect_tripodal(const Polyhedron3& p, const TripodalTriple& t, double rel) {
  const double tol = rel * p.diameter();
  EXPECT_LE(std::abs(t.a.norm() - t.b.norm()), tol);
  EXPECT_LE(std::abs(t.b.norm() - t.c.norm()), tol);
  EXPECT_LE((t.a + t.b + t.c).norm(), tol);
  for (const Point3& x : {t.a, t.b, t.c}) EXPECT_LE(std::abs(signed_distance(p, x)), tol);
  const double ab = (t.a - t.b).norm(), bc = (t.b - t.c).norm(), ca = (t.c - t.a).norm();
  EXPECT_LE(std::abs(ab - bc), 4 * tol);
  EXPECT_LE(std::abs(bc - ca), 4 * tol);
  EXPECT_GT(t.radius, 0.0);
}

TEST(Tripodal, TripodPointsFormula) {
  const auto [b, c] = tripod_points({0, 0, 1}, {1, 0, 0}, 0.0);
  EXPECT_LE((b - Point3(std::sqrt(3.0) / 2, 0, -0.5)).norm(), 1e-15);
  EXPECT_LE((c - Point3(-std::sqrt(3.0) / 2, 0, -0.5)).norm(), 1e-15);
  const auto [b2, c2] = tripod_points({0, 0, 1}, {1, 0, 0}, kPi);
  EXPECT_LE((b2 - c).norm(), 1e-15);
  EXPECT_LE((c2 - b).norm(), 1e-15);
  EXPECT_EQ(error_of([] { tripod_points({0, 0, 1}, {1, 0, 0.1}, 0.0); }), Errc::BadFrame);
  EXPECT_EQ(error_of([] { tripod_points({0, 0, 1}, {2, 0, 0}, 0.0); }), Errc::BadFrame);
}

TEST(Tripodal, TripodPointsIdentities) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> th(0.0, 2 * kPi);
  for (int k = 0; k < 10000; ++k) {
    const Point3 gamma(g(rng), g(rng), g(rng));
    const Point3 v = gamma.cross(Point3(g(rng), g(rng), g(rng))).normalized();
    const double theta = th(rng);
    const auto [b, c] = tripod_points(gamma, v, theta);
    const double r = gamma.norm();
    EXPECT_LE((gamma + b + c).norm(), 1e-12 * r);
    EXPECT_LE(std::abs(b.norm() - r), 1e-12 * r);
    EXPECT_LE(std::abs(c.norm() - r), 1e-12 * r);
    const auto [bs, cs] = tripod_points(gamma, v, theta + kPi);
    EXPECT_LE((bs - c).norm(), 1e-12 * r);
    EXPECT_LE((cs - b).norm(), 1e-12 * r);
  }
}

TEST(Tripodal, SignatureTable) {
  // '+' marks a companion strictly inside, '-' strictly outside; a companion
  // on the surface takes the other one's symbol. This is what makes the
  // nearest-point end of the path read '++'.
  const Polyhedron3 cube = fixtures::cube();
  const double eps = 1e-9;
  EXPECT_EQ(signature(cube, {2, 0, 0}, {0, 0, 0}, eps), Signature::MinusPlus);
  EXPECT_EQ(signature(cube, {0, 0, 0}, {2, 0, 0}, eps), Signature::PlusMinus);
  EXPECT_EQ(signature(cube, {1, 0, 0}, {0, 0, 0}, eps), Signature::PlusPlus);
  EXPECT_EQ(signature(cube, {0, 0, 0}, {0, 0, 0}, eps), Signature::PlusPlus);
  EXPECT_EQ(signature(cube, {1, 0, 0}, {0, 1, 0}, eps), Signature::AllZero);
  EXPECT_EQ(signature(cube, {2, 0, 0}, {0, 2, 0}, eps), Signature::MinusMinus);
  EXPECT_EQ(signature(cube, {1, 0, 0}, {0, 2, 0}, eps), Signature::MinusMinus);
  EXPECT_EQ(signature(cube, {2, 0, 0}, {0, 1, 0}, eps), Signature::MinusMinus);
}

TEST(Tripodal, VerifyExamples) {
  const Polyhedron3 cube = fixtures::cube();
  TripodalTriple t;
  t.a = {1, -1, 0};
  t.b = {0, 1, -1};
  t.c = {-1, 0, 1};
  t.radius = std::sqrt(2.0);
  const TripodalCertificate ok = verify_tripodal(cube, t, 1e-9, 1e-8);
  EXPECT_TRUE(ok.pass);
  EXPECT_NEAR((t.a - t.b).norm(), std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(ok.side_spread, 0.0, 1e-15);

  TripodalTriple moved = t;
  moved.a = {1 + 10 * 1e-9 * cube.diameter(), -1, 0};
  EXPECT_FALSE(verify_tripodal(cube, moved, 1e-9, 1e-8).pass);

  TripodalTriple zero;
  EXPECT_FALSE(verify_tripodal(cube, zero, 1e-9, 1e-8).pass);
}

TEST(Tripodal, EndConditionsOfTheWalk) {
  for (const Polyhedron3& p : {fixtures::cube(), fixtures::octahedron(), fixtures::simplex(),
                               fixtures::random_convex_mesh(30, 2), fixtures::star_mesh(5, 8, 3)}) {
    const TripodMap map(p);
    const double eps = 1e-9 * p.diameter();
    for (int k = 0; k < 64; ++k) {
      const double theta = 2 * kPi * k / 64.0;
      const auto [b0, c0] = map.companions(0.0, theta);
      EXPECT_EQ(signature(p, b0, c0, eps), Signature::PlusPlus) << k;
      const auto [b1, c1] = map.companions(1.0, theta);
      EXPECT_EQ(signature(p, b1, c1, eps), Signature::MinusMinus) << k;
    }
  }
}

TEST(Tripodal, SearchOnCube) {
  const Polyhedron3 cube = fixtures::cube();
  const TripodalResult r = tripodal_search(cube);
  expect_tripodal(cube, r.triple, 1e-9);
  EXPECT_TRUE(verify_tripodal(cube, r.triple, 1e-9 * cube.diameter(), 1e-8 * cube.diameter()).pass);
}

TEST(Tripodal, SearchAndOracleAgreeOnFixtures) {
  for (const Polyhedron3& p : {fixtures::octahedron(), fixtures::simplex(),
                               fixtures::random_convex_mesh(20, 6), fixtures::star_mesh(4, 6, 1)}) {
    const TripodalResult r = tripodal_search(p);
    expect_tripodal(p, r.triple, 1e-6);
    const TripodalTriple o = tripodal_by_face_triples(p);
    expect_tripodal(p, o, 1e-6);
  }
}

TEST(Tripodal, OctahedronSymmetricWitness) {
  const Polyhedron3 p = fixtures::octahedron();
  TripodalTriple t;
  t.a = {0.5, -0.5, 0};
  t.b = {0, 0.5, -0.5};
  t.c = {-0.5, 0, 0.5};
  t.radius = t.a.norm();
  EXPECT_TRUE(verify_tripodal(p, t, 1e-12, 1e-12).pass);
}

TEST(Tripodal, DegenerateWhenOriginOnSurface) {
  std::vector<Point3> w;
  for (int i = 0; i < 8; ++i) w.emplace_back(i & 1 ? 2.0 : 0.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0);
  const Polyhedron3 touching = validate_polyhedron(
      w, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
  const TripodalResult r = tripodal_search(touching);
  EXPECT_EQ(r.method, TripodalMethod::Degenerate);
  EXPECT_TRUE(r.triple.degenerate);
  EXPECT_EQ(r.triple.radius, 0.0);
  EXPECT_TRUE(verify_tripodal(touching, r.triple, 1e-9, 1e-8).pass);
}

TEST(Tripodal, SearchIsDeterministic) {
  const Polyhedron3 p = fixtures::random_convex_mesh(25, 13);
  const TripodalResult a = tripodal_search(p);
  const TripodalResult b = tripodal_search(p);
  EXPECT_EQ(a.triple.a, b.triple.a);
  EXPECT_EQ(a.triple.b, b.triple.b);
  EXPECT_EQ(a.t, b.t);
  EXPECT_EQ(a.theta, b.theta);
}

}  // namespace
}  // namespace wbal
