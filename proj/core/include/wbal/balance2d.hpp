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

#ifndef WBAL_BALANCE2D_HPP_
#define WBAL_BALANCE2D_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "wbal/geom2d.hpp"

namespace wbal {

/// Nonnegative weights in input order, plus the permutation that sorts them
/// descending (stable, so equal weights keep input order).
class WeightSet {
 public:
  explicit WeightSet(std::vector<double> weights);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return weights_; }
  const std::vector<int>& descending() const { return order_; }
  double total() const;
  double max() const { return weights_[static_cast<std::size_t>(order_.front())]; }

 private:
  std::vector<double> weights_;
  std::vector<int> order_;
};

struct Assignment {
  int weight_index = 0;
  BoundaryPoint2 at;
};

/// The magnified copy followed during one migration round, kept for figures.
struct MigrationRound {
  int mover = 0;     // weight index sliding along the boundary
  int follower = 0;  // weight index riding the image curve
  double scale = 0.0;
  Point2 offset = Point2::Zero();  // image map x -> scale * x + offset
  double travel = 0.0;
};

struct Placement2 {
  std::vector<Assignment> assignments;  // one per weight, by weight index
  Point2 target = Point2::Zero();
  int migration_rounds = 0;  // rounds with nonzero travel
  std::vector<MigrationRound> trace;
};

struct BalanceCertificate {
  double residual = 0.0;
  double max_membership_error = 0.0;
  double eps_geom = 0.0;
  double eps_bal = 0.0;
  bool pass = false;
};

struct PartitionInstance {
  std::vector<std::int64_t> values;
};

struct ThreeGroups {
  std::array<std::vector<int>, 3> groups;
  std::array<double, 3> totals{};
};

struct GadgetDecision {
  bool balanceable = false;
  std::optional<Placement2> witness;
};

/// True iff the largest weight does not exceed the sum of the others.
bool feasibility(const WeightSet& w);

/// Nearest-point start plus successive two-weight migrations; at most k-1
/// rounds. Balances about `target` (default origin).
Placement2 balance_iterative(const Polygon2& poly, const WeightSet& w,
                             const Point2& target = Point2::Zero());

/// Greedy split into three groups, each weighing at most half the total.
ThreeGroups partition_three(const WeightSet& w);

/// Collapses each group of partition_three into one super-weight and places
/// every member at its group's location (at most three distinct points).
Placement2 balance_fast(const Polygon2& poly, const WeightSet& w,
                        const Point2& target = Point2::Zero());

BalanceCertificate verify_balance(const Polygon2& poly, const WeightSet& w,
                                  const Placement2& placement, double eps_geom,
                                  double eps_bal);

/// Variant for raw coordinates (e.g. read back from a certificate file):
/// membership error is the distance of each point to the boundary.
BalanceCertificate verify_balance_points(const Polygon2& poly, const WeightSet& w,
                                         const std::vector<Point2>& points,
                                         const Point2& target, double eps_geom,
                                         double eps_bal);

/// Six-vertex non-convex gadget and the weights [2 * sum(a), a_1, ..., a_N].
std::pair<Polygon2, WeightSet> gadget_from_partition(const PartitionInstance& inst);

Polygon2 gadget_polygon();

/// Exact equal-sum split decision by subset-sum dynamic programming.
bool partition_oracle(const PartitionInstance& inst);

/// Subset realizing an equal split, if one exists (indices into values).
std::optional<std::vector<int>> partition_witness(const PartitionInstance& inst);

/// Decides whether the gadget instance balances, reasoning on the gadget's
/// geometry (reflex vertices, hull corners). Independent of partition_oracle.
GadgetDecision gadget_decide(const PartitionInstance& inst);

}  // namespace wbal

#endif  // WBAL_BALANCE2D_HPP_
