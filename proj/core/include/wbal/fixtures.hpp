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

// Deterministic test and benchmark shapes. Every random generator is a pure
// function of its seed.

#ifndef WBAL_FIXTURES_HPP_
#define WBAL_FIXTURES_HPP_

#include <cstdint>
#include <vector>

#include "wbal/balance2d.hpp"
#include "wbal/geom2d.hpp"
#include "wbal/geom3d.hpp"
#include "wbal/polytope.hpp"

namespace wbal::fixtures {

/// [-1, 1]^2.
Polygon2 square();

/// Star-shaped about the origin: n vertices at sorted random angles with
/// radii in [r_min, r_max]. Simple with the origin strictly inside.
Polygon2 random_star_polygon(int n, std::uint64_t seed, double r_min = 0.3, double r_max = 1.5);

/// k positive weights with max <= total / 2.
WeightSet random_feasible_weights(int k, std::uint64_t seed);

/// [-1, 1]^3 with square faces.
Polyhedron3 cube();
Polyhedron3 octahedron();
/// Tetrahedron (3,0,0), (0,3,0), (0,0,3), (-1,-1,-1).
Polyhedron3 simplex();

/// Triangulated hull of n random points near the unit sphere (n <= 50).
Polyhedron3 random_convex_mesh(int n, std::uint64_t seed);

/// UV sphere with random radii per vertex; star-shaped, usually non-convex.
Polyhedron3 star_mesh(int rings, int sectors, std::uint64_t seed, double r_min = 0.6,
                      double r_max = 1.4);

/// Convex mesh -> H-representation with one row per face.
HPolytope hrep_of_mesh(const Polyhedron3& poly);

/// [-1, 1]^d.
HPolytope hypercube(int d);

/// m >= d + 1 random halfspaces containing the unit-offset ball region:
/// a rotated, jittered simplex plus m - d - 1 extra rows. Bounded, with the
/// origin interior.
HPolytope random_hpolytope(int d, int m, std::uint64_t seed);

/// Hull of n random points (n >= 4) around the origin in R^3.
HPolytope random_3polytope(int n, std::uint64_t seed);

}  // namespace wbal::fixtures

#endif  // WBAL_FIXTURES_HPP_
