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

#ifndef WBAL_POLYTOPE_HPP_
#define WBAL_POLYTOPE_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wbal {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Sorted, duplicate-free row indices.
using IndexSet = std::vector<int>;

IndexSet intersect_sets(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& small, const IndexSet& big);

/// Which body a halfspace came from when building P and -P together.
enum class Provenance { FromP, FromNegP };

/// Convex polytope {x : A x <= b}. Row i carries a provenance tag and the
/// index of the row it was derived from in its source polytope.
class HPolytope {
 public:
  HPolytope(MatX normals, VecX offsets);
  HPolytope(MatX normals, VecX offsets, std::vector<Provenance> provenance,
            std::vector<int> source_rows);

  int dim() const { return static_cast<int>(normals_.cols()); }
  int rows() const { return static_cast<int>(normals_.rows()); }
  const MatX& normals() const { return normals_; }
  const VecX& offsets() const { return offsets_; }
  const std::vector<Provenance>& provenance() const { return provenance_; }
  const std::vector<int>& source_rows() const { return source_rows_; }

  /// All offsets strictly positive, i.e. A * 0 < b.
  bool origin_interior() const;
  bool contains(const VecX& x, double eps) const;

 private:
  MatX normals_;
  VecX offsets_;
  std::vector<Provenance> provenance_;
  std::vector<int> source_rows_;
};

/// Checks shape (d >= 1, at least d+1 rows), boundedness via LP probes along
/// +-axes and a nonempty interior via the largest inscribed ball. Fails with
/// InvalidArgument, Unbounded or EmptyInterior; returns the input unchanged.
HPolytope validate_hrep(const HPolytope& h);

/// Radius of the largest ball inside h (0 when the interior is empty).
double chebyshev_radius(const HPolytope& h);

struct VRep {
  std::vector<VecX> vertices;
  std::vector<IndexSet> tight;  // rows tight at each vertex
  double eps_tight = 0.0;
  double diameter = 0.0;  // bounding-box diagonal of the vertices
};

/// 1e-8 * (1 + max |b_i|).
double default_eps_tight(const HPolytope& h);

/// Pivots along edges from an LP vertex, falling back to brute force if a
/// step fails to land on a vertex. Vertices are sorted lexicographically.
/// eps_tight < 0 selects the default.
VRep enumerate_vertices(const HPolytope& h, double eps_tight = -1.0);

/// Every d-subset of rows; the reference the pivoting search is tested against.
VRep enumerate_vertices_brute(const HPolytope& h, double eps_tight = -1.0);

struct FaceD {
  IndexSet tight;
  std::vector<int> vertices;  // ids into the VRep
  int dim = 0;
  VecX point;  // centroid of the member vertices
  MatX basis;  // d x dim, orthonormal columns spanning the face directions
};

/// All faces of dimension exactly k (k = d gives the polytope itself),
/// ordered by their sorted vertex lists.
std::vector<FaceD> faces_of_dim(const HPolytope& h, const VRep& v, int k);

/// Smallest face containing x: rows tight at x within eps.
FaceD minimal_face(const HPolytope& h, const VRep& v, const VecX& x, double eps);

struct SkeletonGraph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<std::vector<int>> adjacency;
};

/// Fails with DisconnectedSkeleton when the graph is not connected.
SkeletonGraph skeleton_graph(const HPolytope& h, const VRep& v);

/// Vertex ids on a shortest path (BFS, smallest-id ties) from `from` to `to`.
std::vector<int> skeleton_path(const SkeletonGraph& g, int from, int to);

HPolytope reflect(const HPolytope& h);
HPolytope intersect(const HPolytope& a, const HPolytope& b);

/// Offsets scaled by (1 + eta_i), eta_i in (0, magnitude] from seed.
HPolytope perturb(const HPolytope& h, double magnitude, std::uint64_t seed);

/// Facets of the hull by brute force over d-subsets. Fails with
/// DegenerateSpan unless the points affinely span R^d.
HPolytope hull_of_points(const std::vector<VecX>& points);

HPolytope product(const HPolytope& a, const HPolytope& b);

/// Text format: "m d" then m lines "a_1 ... a_d b".
HPolytope parse_hrep_text(std::string_view text);
std::string format_hrep_text(const HPolytope& h);

/// Rank of the rows of `m` with a relative threshold.
int matrix_rank(const MatX& m, double rel_tol = 1e-9);

}  // namespace wbal

#endif  // WBAL_POLYTOPE_HPP_
