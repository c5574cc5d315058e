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

#ifndef WBAL_SKELETON_BALANCE_HPP_
#define WBAL_SKELETON_BALANCE_HPP_

#include <cstdint>
#include <vector>

#include "wbal/geom3d.hpp"
#include "wbal/polytope.hpp"

namespace wbal {

/// x on a face of P of dim <= floor(d/2) and on a face of -P of dim <=
/// ceil(d/2). face_negP holds -P's tight rows; its vertex ids index the
/// negated vertex list of P.
struct HalvingWitness {
  VecX x;
  FaceD face_P;
  FaceD face_negP;
  int j = 0;  // tight rows from P at the walk's vertex; d - j from -P
  int retries = 0;  // perturbation attempts used (0 = none needed)
  double magnitude = 0.0;
};

/// Walk on the 1-skeleton of the intersection of P and -P from a vertex towards its antipode.
/// Perturbation draws derive from `seed`. Fails with PerturbationFailed or
/// WalkFailed.
HalvingWitness halving_point(const HPolytope& h, std::uint64_t seed = 0);

struct HalvingCertificate {
  double membership = 0.0;  // worst row residual of x on face_P and -x on face_negP
  int dim_P = 0;            // recomputed from the tight sets
  int dim_negP = 0;
  double eps_geom = 0.0;
  bool pass = false;
};

/// Checks x against the named tight sets of P and -P; eps_geom is absolute.
HalvingCertificate verify_halving(const HPolytope& h, const VecX& x, const IndexSet& tight_P,
                                  const IndexSet& tight_negP, double eps_geom);

/// A point on the 1-skeleton; the host face is named by its tight rows.
struct SkeletonPoint {
  VecX x;
  IndexSet host_tight;
  std::vector<int> host_vertices;  // VRep ids of the host's vertices
  int host_dim = 0;
};

struct SkeletonPlacement {
  std::vector<SkeletonPoint> points;
  VecX target;
};

/// 2^k points on edges and vertices summing to 2^k * origin; needs d <= 2^k.
SkeletonPlacement pow2_points(const HPolytope& h, int k, std::uint64_t seed = 0);

/// Three edge points with barycenter `target` (default origin); d must be 3.
SkeletonPlacement three_on_edges(const HPolytope& h, const VecX& target = VecX());

struct EdgeTripleAudit {
  std::int64_t edges = 0;
  std::int64_t triples = 0;  // multisets examined
  std::int64_t nonsingular = 0;  // classification of every examined system
  std::int64_t singular = 0;
  std::int64_t solutions = 0;
  double max_residual = 0.0;  // worst linear residual among solutions
};

/// Examines every multiset of three edges without stopping early.
EdgeTripleAudit three_on_edges_audit(const HPolytope& h, const VecX& target = VecX());

struct MeshEdgePoint {
  Point3 x = Point3::Zero();
  int u = 0;  // host edge (u, v) of an original face; u == v for a vertex
  int v = 0;
};

struct MeshPlacement {
  std::vector<MeshEdgePoint> points;
};

/// Four points on edges of a closed polyhedron summing to zero, through an
/// antipodal pair of the section by `plane` (which must contain the origin).
MeshPlacement four_on_edges(const Polyhedron3& poly,
                            const Plane3& plane = Plane3::make(Eigen::Vector3d::UnitZ()));

/// d points on the 1-skeleton summing to zero for d = 2^i * 3^j, j <= 1.
/// Fails with UnsupportedDimension otherwise.
SkeletonPlacement compose_balance(const HPolytope& h, std::uint64_t seed = 0);

/// Product of the equilateral triangle with itself (and [-1, 2] for odd d).
HPolytope prop9_fixture(int d);

/// True iff every face of dimension <= k misses -P.
bool prop9_check(const HPolytope& h, int k);

struct SkeletonCertificate {
  double residual = 0.0;
  double max_membership = 0.0;
  int max_host_dim = 0;
  double eps_geom = 0.0;
  double eps_bal = 0.0;
  bool pass = false;
};

/// Re-derives every host face from its tight rows; tolerances are absolute.
SkeletonCertificate verify_skeleton(const HPolytope& h, const SkeletonPlacement& pl,
                                    double eps_geom, double eps_bal);

SkeletonCertificate verify_mesh_placement(const Polyhedron3& poly, const MeshPlacement& pl,
                                          double eps_geom, double eps_bal);

/// Distance from x to segment [a, b].
double segment_distance(const VecX& x, const VecX& a, const VecX& b);

}  // namespace wbal

#endif  // WBAL_SKELETON_BALANCE_HPP_
