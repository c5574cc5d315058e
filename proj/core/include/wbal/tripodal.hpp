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

#ifndef WBAL_TRIPODAL_HPP_
#define WBAL_TRIPODAL_HPP_

#include <utility>

#include "wbal/geom3d.hpp"

namespace wbal {

/// Three surface points at equal distance from the origin summing to zero.
struct TripodalTriple {
  Point3 a = Point3::Zero();
  Point3 b = Point3::Zero();
  Point3 c = Point3::Zero();
  SurfacePoint3 at_a;
  SurfacePoint3 at_b;
  SurfacePoint3 at_c;
  double radius = 0.0;
  bool degenerate = false;  // all three at the origin (origin on the surface)
};

// '+' means strictly inside, '-' strictly outside; a zero (on the surface)
// takes the sign of the other point.
enum class Signature { PlusPlus, MinusMinus, PlusMinus, MinusPlus, AllZero };

const char* to_string(Signature s);

/// The two companions of gamma forming an origin-centered equilateral
/// triangle, with b - c at angle theta from v inside the plane normal to
/// gamma. Fails with BadFrame unless v is a unit vector normal to gamma.
std::pair<Point3, Point3> tripod_points(const Point3& gamma, const Eigen::Vector3d& v,
                                        double theta);

Signature signature(const Polyhedron3& poly, const Point3& b, const Point3& c, double eps);

/// Everything the (t, theta) search works on: the surface path from the
/// nearest to the farthest surface point and a frame field along it.
class TripodMap {
 public:
  explicit TripodMap(const Polyhedron3& poly);

  const Polyhedron3& polyhedron() const { return *poly_; }
  const ExtremePoints& extremes() const { return extremes_; }
  const SurfacePath& path() const { return path_; }
  const FrameField& field() const { return field_; }

  Point3 a(double t) const { return field_.eval(t).q; }
  std::pair<Point3, Point3> companions(double t, double theta) const;
  /// Signed distances of the two companions (negative inside).
  Eigen::Vector2d g(double t, double theta) const;

 private:
  const Polyhedron3* poly_;
  ExtremePoints extremes_;
  SurfacePath path_;
  FrameField field_;
};

struct TripodalSearchOptions {
  int n_t = 256;
  int n_theta = 256;
  int max_grid = 2048;  // grid doubles up to this before falling back
  int newton_iterations = 60;
  int subdivision_depth = 10;
  bool fallback_to_face_triples = true;
  int samples_per_triple = 64;
};

enum class TripodalMethod { GridSearch, FaceTriples, Degenerate };

struct TripodalResult {
  TripodalTriple triple;
  TripodalMethod method = TripodalMethod::GridSearch;
  int grid = 0;  // n_t of the grid that produced the triple
  double t = 0.0;
  double theta = 0.0;
};

/// Grid scan over (t, theta) in [0,1] x [0,pi] plus damped root refinement;
/// falls back to the face-triple sweep. Fails with SearchExhausted.
TripodalResult tripodal_search(const Polyhedron3& poly,
                               const TripodalSearchOptions& opts = {});

/// Independent search over ordered triples of original faces. Returns the
/// first verified triple in lexicographic order; fails with NotFound.
TripodalTriple tripodal_by_face_triples(const Polyhedron3& poly, int samples_per_triple = 64);

struct TripodalCertificate {
  double norm_spread = 0.0;      // max(| |a|-|b| |, | |b|-|c| |)
  double sum_residual = 0.0;     // |a + b + c|
  double max_membership = 0.0;   // max distance to the surface
  double side_spread = 0.0;      // spread of the pairwise distances
  double eps_geom = 0.0;
  double eps_bal = 0.0;
  bool pass = false;
};

/// Tolerances are absolute.
TripodalCertificate verify_tripodal(const Polyhedron3& poly, const TripodalTriple& triple,
                                    double eps_geom, double eps_bal);

}  // namespace wbal

#endif  // WBAL_TRIPODAL_HPP_
