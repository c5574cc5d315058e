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

#include "wbal/balance2d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "wbal/error.hpp"

namespace wbal {
namespace {

// Neumaier summation; keeps the feasibility comparison honest for long lists.
double compensated_sum(const std::vector<double>& xs, int skip = -1) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (static_cast<int>(i) == skip) continue;
    const double x = xs[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

std::int64_t checked_total(const PartitionInstance& inst) {
  std::int64_t total = 0;
  for (std::int64_t a : inst.values) {
    if (a < 0) fail(Errc::InvalidArgument, "partition values must be nonnegative");
    if (__builtin_add_overflow(total, a, &total)) fail(Errc::Overflow);
  }
  return total;
}

// Subset-sum reachability as a packed bitset: bit t set iff some subset sums
// to t. Shift-or per item.
bool bitset_reaches(const std::vector<std::int64_t>& values, std::int64_t target) {
  const std::size_t bits = static_cast<std::size_t>(target) + 1;
  std::vector<std::uint64_t> reach((bits + 63) / 64, 0);
  reach[0] = 1;
  for (std::int64_t a : values) {
    if (a == 0 || a > target) continue;
    const std::size_t word_shift = static_cast<std::size_t>(a) / 64;
    const unsigned bit_shift = static_cast<unsigned>(a % 64);
    for (std::size_t i = reach.size(); i-- > word_shift;) {
      std::uint64_t v = reach[i - word_shift] << bit_shift;
      if (bit_shift != 0 && i > word_shift) {
        v |= reach[i - word_shift - 1] >> (64 - bit_shift);
      }
      reach[i] |= v;
    }
  }
  const std::size_t t = static_cast<std::size_t>(target);
  return (reach[t / 64] >> (t % 64)) & 1U;
}

constexpr std::int64_t kDenseLimit = std::int64_t{1} << 28;

// Fallback for huge targets: the set of reachable sums up to the target.
bool sparse_reaches(const std::vector<std::int64_t>& values, std::int64_t target) {
  std::set<std::int64_t> reach{0};
  for (std::int64_t a : values) {
    if (a == 0) continue;
    std::vector<std::int64_t> next;
    for (std::int64_t s : reach) {
      if (s + a <= target) next.push_back(s + a);
    }
    reach.insert(next.begin(), next.end());
    if (reach.count(target)) return true;
  }
  return reach.count(target) > 0;
}

// Subset of values summing to target, by forward reachability with one
// predecessor item per reached sum.
std::optional<std::vector<int>> subset_with_sum(const std::vector<std::int64_t>& values,
                                                std::int64_t target) {
  if (target < 0) return std::nullopt;
  if (target > kDenseLimit) fail(Errc::Overflow, "subset target too large for witness");
  const std::size_t size = static_cast<std::size_t>(target) + 1;
  std::vector<std::uint8_t> reached(size, 0);
  std::vector<int> via(size, -1);
  reached[0] = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t a = values[i];
    if (a == 0 || a > target) continue;
    for (std::int64_t s = target; s >= a; --s) {
      const auto su = static_cast<std::size_t>(s);
      if (!reached[su] && reached[su - static_cast<std::size_t>(a)]) {
        reached[su] = 1;
        via[su] = static_cast<int>(i);
      }
    }
  }
  if (!reached[static_cast<std::size_t>(target)]) return std::nullopt;
  std::vector<int> subset;
  for (std::int64_t s = target; s > 0;) {
    const int i = via[static_cast<std::size_t>(s)];
    subset.push_back(i);
    s -= values[static_cast<std::size_t>(i)];
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

}  // namespace

WeightSet::WeightSet(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) fail(Errc::InvalidArgument, "empty weight set");
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      fail(Errc::InvalidArgument, "weights must be finite and nonnegative");
    }
  }
  order_.resize(weights_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
    return weights_[static_cast<std::size_t>(a)] > weights_[static_cast<std::size_t>(b)];
  });
}

double WeightSet::total() const { return compensated_sum(weights_); }

bool feasibility(const WeightSet& w) {
  const int top = w.descending().front();
  return w[top] <= compensated_sum(w.values(), top);
}

Placement2 balance_iterative(const Polygon2& poly, const WeightSet& w,
                             const Point2& target) {
  if (!feasibility(w)) fail(Errc::Infeasible);
  const Polygon2 local = poly.translated(-target);
  const Tolerances tol = Tolerances::for_scale(local.diameter());
  if (locate_point(local, Point2::Zero(), tol.geom).side == Side::Outside) {
    fail(Errc::OriginOutside);
  }

  Placement2 out;
  out.target = target;
  out.assignments.resize(static_cast<std::size_t>(w.size()));
  for (int i = 0; i < w.size(); ++i) out.assignments[static_cast<std::size_t>(i)].weight_index = i;

  std::vector<int> order;  // positive weights, descending
  for (int i : w.descending()) {
    if (w[i] > 0.0) order.push_back(i);
  }
  const BoundaryPoint2 p_at = nearest_boundary_point(local, Point2::Zero()).at;
  if (order.empty()) {
    for (auto& a : out.assignments) a.at = p_at;
    return out;
  }

  const int k = static_cast<int>(order.size());
  std::vector<double> wt(static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) wt[static_cast<std::size_t>(s)] = w[order[static_cast<std::size_t>(s)]];

  // pos[s] is the current location; at[s] is meaningful once on the boundary.
  std::vector<Point2> pos(static_cast<std::size_t>(k));
  std::vector<BoundaryPoint2> at(static_cast<std::size_t>(k));
  const Point2 p = eval_boundary(local, p_at);
  pos[0] = p;
  at[0] = p_at;
  double rest = 0.0;
  {
    std::vector<double> tail(wt.begin() + 1, wt.end());
    rest = compensated_sum(tail);
  }
  const Point2 q = -p * (wt[0] / rest);
  for (int s = 1; s < k; ++s) pos[static_cast<std::size_t>(s)] = q;

  for (int s = 0; s + 1 < k; ++s) {
    const auto su = static_cast<std::size_t>(s);
    Point2 c = Point2::Zero();
    for (int j = 0; j < k; ++j) {
      if (j == s || j == s + 1) continue;
      c += wt[static_cast<std::size_t>(j)] * pos[static_cast<std::size_t>(j)];
    }
    const double scale = -wt[su] / wt[su + 1];
    const Point2 offset = -c / wt[su + 1];
    const auto hit = first_companion_hit(local, at[su], scale, offset, tol.geom);
    if (!hit) fail(Errc::NoCrossing);
    at[su] = hit->mover;
    at[su + 1] = hit->follower;
    pos[su] = eval_boundary(local, at[su]);
    pos[su + 1] = eval_boundary(local, at[su + 1]);
    out.trace.push_back({order[su], order[su + 1], scale, offset + target * (1.0 - scale),
                         hit->travel});
    if (hit->travel > 0.0) ++out.migration_rounds;
  }

  for (int s = 0; s < k; ++s) {
    out.assignments[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])].at =
        at[static_cast<std::size_t>(s)];
  }
  // Zero weights ride along with the largest one.
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) out.assignments[static_cast<std::size_t>(i)].at = at[0];
  }
  return out;
}

ThreeGroups partition_three(const WeightSet& w) {
  if (!feasibility(w)) fail(Errc::Infeasible);
  ThreeGroups g;
  const int top = w.descending().front();
  const double total = w.total();
  const double threshold = std::max(0.0, total / 2.0 - w[top]);
  g.groups[0] = {top};
  g.totals[0] = w[top];
  int i = 0;
  double acc = 0.0;
  for (; i < w.size() && acc < threshold; ++i) {
    if (i == top) continue;
    g.groups[1].push_back(i);
    acc += w[i];
  }
  g.totals[1] = acc;
  double rest = 0.0;
  for (; i < w.size(); ++i) {
    if (i == top) continue;
    g.groups[2].push_back(i);
    rest += w[i];
  }
  g.totals[2] = rest;
  return g;
}

Placement2 balance_fast(const Polygon2& poly, const WeightSet& w, const Point2& target) {
  const ThreeGroups g = partition_three(w);
  std::vector<double> supers;
  std::vector<int> group_of_super;
  for (int j = 0; j < 3; ++j) {
    if (g.totals[static_cast<std::size_t>(j)] > 0.0) {
      supers.push_back(g.totals[static_cast<std::size_t>(j)]);
      group_of_super.push_back(j);
    }
  }
  Placement2 out;
  out.target = target;
  out.assignments.resize(static_cast<std::size_t>(w.size()));
  for (int i = 0; i < w.size(); ++i) out.assignments[static_cast<std::size_t>(i)].weight_index = i;
  if (supers.empty()) {
    const Placement2 trivial = balance_iterative(poly, w, target);
    return trivial;
  }
  // Group totals are summed in a different order than the feasibility test,
  // so the tight case can come out one ulp infeasible. Clamp it.
  if (supers.size() >= 2) {
    const auto big = std::max_element(supers.begin(), supers.end());
    double others = 0.0;
    for (auto it = supers.begin(); it != supers.end(); ++it) {
      if (it != big) others += *it;
    }
    if (*big > others) *big = others;
  }
  const Placement2 sub = balance_iterative(poly, WeightSet(supers), target);
  std::array<BoundaryPoint2, 3> loc{};
  for (std::size_t s = 0; s < supers.size(); ++s) {
    loc[static_cast<std::size_t>(group_of_super[s])] = sub.assignments[s].at;
  }
  // Empty or zero-total groups fall back to the heaviest group's spot.
  const BoundaryPoint2 fallback = loc[static_cast<std::size_t>(group_of_super.front())];
  for (std::size_t j = 0; j < 3; ++j) {
    for (int i : g.groups[j]) {
      out.assignments[static_cast<std::size_t>(i)].at = g.totals[j] > 0.0 ? loc[j] : fallback;
    }
  }
  out.migration_rounds = sub.migration_rounds;
  out.trace = sub.trace;
  for (auto& r : out.trace) {
    r.mover = g.groups[static_cast<std::size_t>(group_of_super[static_cast<std::size_t>(r.mover)])].front();
    r.follower =
        g.groups[static_cast<std::size_t>(group_of_super[static_cast<std::size_t>(r.follower)])].front();
  }
  return out;
}

namespace {

BalanceCertificate finish_certificate(long double rx, long double ry, double membership,
                                      double eps_geom, double eps_bal) {
  BalanceCertificate cert;
  cert.residual = static_cast<double>(std::sqrt(rx * rx + ry * ry));
  cert.max_membership_error = membership;
  cert.eps_geom = eps_geom;
  cert.eps_bal = eps_bal;
  cert.pass = cert.residual <= eps_bal && membership <= eps_geom;
  return cert;
}

}  // namespace

BalanceCertificate verify_balance(const Polygon2& poly, const WeightSet& w,
                                  const Placement2& placement, double eps_geom,
                                  double eps_bal) {
  std::vector<const Assignment*> by_index(static_cast<std::size_t>(w.size()), nullptr);
  for (const auto& a : placement.assignments) {
    if (a.weight_index < 0 || a.weight_index >= w.size() ||
        by_index[static_cast<std::size_t>(a.weight_index)] != nullptr) {
      fail(Errc::InvalidArgument, "placement does not cover each weight exactly once");
    }
    by_index[static_cast<std::size_t>(a.weight_index)] = &a;
  }
  for (const auto* a : by_index) {
    if (a == nullptr) fail(Errc::InvalidArgument, "placement misses a weight");
  }
  long double rx = 0.0L;
  long double ry = 0.0L;
  double membership = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const BoundaryPoint2& bp = by_index[static_cast<std::size_t>(i)]->at;
    if (bp.edge < 0 || bp.edge >= poly.size() || !(bp.s >= 0.0 && bp.s <= 1.0)) {
      membership = std::numeric_limits<double>::infinity();
      continue;
    }
    const Point2 x = eval_boundary(poly, bp) - placement.target;
    rx += static_cast<long double>(w[i]) * x.x();
    ry += static_cast<long double>(w[i]) * x.y();
  }
  return finish_certificate(rx, ry, membership, eps_geom, eps_bal);
}

BalanceCertificate verify_balance_points(const Polygon2& poly, const WeightSet& w,
                                         const std::vector<Point2>& points,
                                         const Point2& target, double eps_geom,
                                         double eps_bal) {
  if (static_cast<int>(points.size()) != w.size()) {
    fail(Errc::InvalidArgument, "one point per weight required");
  }
  long double rx = 0.0L;
  long double ry = 0.0L;
  double membership = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    const Point2& x = points[static_cast<std::size_t>(i)];
    membership = std::max(membership, nearest_boundary_point(poly, x).distance);
    rx += static_cast<long double>(w[i]) * (x.x() - target.x());
    ry += static_cast<long double>(w[i]) * (x.y() - target.y());
  }
  return finish_certificate(rx, ry, membership, eps_geom, eps_bal);
}

Polygon2 gadget_polygon() {
  return validate_polygon({{0, 1}, {2, 2}, {2, -2}, {0, -1}, {-2, -2}, {-2, 2}});
}

std::pair<Polygon2, WeightSet> gadget_from_partition(const PartitionInstance& inst) {
  if (inst.values.empty()) fail(Errc::InvalidArgument, "empty partition instance");
  const std::int64_t total = checked_total(inst);
  std::int64_t heavy = 0;
  if (__builtin_mul_overflow(total, std::int64_t{2}, &heavy)) fail(Errc::Overflow);
  std::vector<double> weights;
  weights.reserve(inst.values.size() + 1);
  weights.push_back(static_cast<double>(heavy));
  for (std::int64_t a : inst.values) weights.push_back(static_cast<double>(a));
  return {gadget_polygon(), WeightSet(std::move(weights))};
}

bool partition_oracle(const PartitionInstance& inst) {
  const std::int64_t total = checked_total(inst);
  if (total % 2 != 0) return false;
  const std::int64_t half = total / 2;
  if (half <= kDenseLimit) return bitset_reaches(inst.values, half);
  return sparse_reaches(inst.values, half);
}

std::optional<std::vector<int>> partition_witness(const PartitionInstance& inst) {
  const std::int64_t total = checked_total(inst);
  if (total % 2 != 0) return std::nullopt;
  return subset_with_sum(inst.values, total / 2);
}

GadgetDecision gadget_decide(const PartitionInstance& inst) {
  const auto [poly, w] = gadget_from_partition(inst);
  const int n = poly.size();
  const double w1 = w[0];
  const std::int64_t total = checked_total(inst);

  // The heavy weight can only sit at a reflex vertex r; the others then have
  // to pull the barycenter back from r, which they can only do from the two
  // vertices extreme in direction -r. Solve for the corner totals and ask
  // whether the values split that way.
  for (int i = 0; i < n; ++i) {
    const Point2& prev = poly.vertex((i + n - 1) % n);
    const Point2& r = poly.vertex(i);
    const Point2& next = poly.vertex((i + 1) % n);
    if (cross2(r - prev, next - r) >= 0.0) continue;  // convex corner

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : poly.vertices()) best = std::max(best, -r.dot(v));
    std::vector<int> corners;
    for (int j = 0; j < n; ++j) {
      if (-r.dot(poly.vertex(j)) == best) corners.push_back(j);
    }
    if (corners.size() != 2) continue;
    const Point2& c1 = poly.vertex(corners[0]);
    const Point2& c2 = poly.vertex(corners[1]);
    Eigen::Matrix2d m;
    m << c1.x(), c2.x(), c1.y(), c2.y();
    if (std::abs(m.determinant()) < 1e-12) continue;
    const Eigen::Vector2d ab = m.partialPivLu().solve(-w1 * r);
    const double alpha = std::round(ab.x());
    const double beta = std::round(ab.y());
    if (std::abs(alpha - ab.x()) > 1e-9 || std::abs(beta - ab.y()) > 1e-9) continue;
    if (alpha < 0 || beta < 0 || alpha + beta != static_cast<double>(total)) continue;

    const auto subset = subset_with_sum(inst.values, static_cast<std::int64_t>(alpha));
    if (!subset) continue;
    Placement2 pl;
    pl.assignments.resize(static_cast<std::size_t>(w.size()));
    for (int k = 0; k < w.size(); ++k) {
      pl.assignments[static_cast<std::size_t>(k)] = {k, {corners[1], 0.0}};
    }
    pl.assignments[0].at = {i, 0.0};
    for (int idx : *subset) pl.assignments[static_cast<std::size_t>(idx + 1)].at = {corners[0], 0.0};
    return {true, std::move(pl)};
  }
  return {false, std::nullopt};
}

}  // namespace wbal
