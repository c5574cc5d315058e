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

#include "wbal/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "wbal/error.hpp"
#include "wbal/lp.hpp"
#include "wbal/numfmt.hpp"

namespace wbal {
namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

MatX rows_of(const HPolytope& h, const IndexSet& rows, bool normalize) {
  MatX m(static_cast<Eigen::Index>(rows.size()), h.dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.row(static_cast<Eigen::Index>(r)) = h.normals().row(rows[r]);
    if (normalize) {
      const double n = m.row(static_cast<Eigen::Index>(r)).norm();
      if (n > 0.0) m.row(static_cast<Eigen::Index>(r)) /= n;
    }
  }
  return m;
}

double bbox_diagonal(const std::vector<VecX>& pts) {
  if (pts.empty()) return 0.0;
  VecX lo = pts.front();
  VecX hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

IndexSet tight_rows(const HPolytope& h, const VecX& x, double eps) {
  IndexSet t;
  for (int i = 0; i < h.rows(); ++i) {
    const double n = h.normals().row(i).norm();
    if (std::abs(h.normals().row(i).dot(x) - h.offsets()(i)) <= eps * std::max(n, 1e-300)) {
      t.push_back(i);
    }
  }
  return t;
}

// Dedupes, sorts lexicographically (so ids do not depend on the search
// order) and recomputes tight sets.
VRep finish_vrep(const HPolytope& h, const std::vector<VecX>& found, double eps_tight) {
  VRep out;
  out.eps_tight = eps_tight;
  const double diam = bbox_diagonal(found);
  const double merge = 1e-9 * std::max(diam, 1e-300);
  for (const auto& x : found) {
    bool dup = false;
    for (const auto& y : out.vertices) {
      if ((x - y).norm() <= merge) {
        dup = true;
        break;
      }
    }
    if (!dup) out.vertices.push_back(x);
  }
  // Coordinates within `merge` count as equal so round-off cannot reorder.
  std::sort(out.vertices.begin(), out.vertices.end(), [merge](const VecX& a, const VecX& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (std::abs(a(i) - b(i)) > merge) return a(i) < b(i);
    }
    return false;
  });
  for (const auto& x : out.vertices) out.tight.push_back(tight_rows(h, x, eps_tight));
  out.diameter = bbox_diagonal(out.vertices);
  return out;
}

int affine_rank(const std::vector<VecX>& pts, const std::vector<int>& ids, double scale) {
  if (ids.size() <= 1) return 0;
  const VecX& base = pts[idx(ids[0])];
  MatX m(base.size(), static_cast<Eigen::Index>(ids.size() - 1));
  for (std::size_t i = 1; i < ids.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i - 1)) = pts[idx(ids[i])] - base;
  }
  Eigen::JacobiSVD<MatX> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-9 * std::max(scale, 1e-300)) ++r;
  }
  return r;
}

FaceD make_face(const VRep& v, IndexSet tight, std::vector<int> members) {
  FaceD f;
  f.tight = std::move(tight);
  f.vertices = std::move(members);
  const Eigen::Index d = v.vertices.front().size();
  f.point = VecX::Zero(d);
  for (int id : f.vertices) f.point += v.vertices[idx(id)];
  f.point /= static_cast<double>(f.vertices.size());
  if (f.vertices.size() <= 1) {
    f.dim = 0;
    f.basis = MatX(d, 0);
    return f;
  }
  MatX m(d, static_cast<Eigen::Index>(f.vertices.size()));
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i)) = v.vertices[idx(f.vertices[i])] - f.point;
  }
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-9 * std::max(v.diameter, 1e-300)) ++r;
  }
  f.dim = r;
  f.basis = svd.matrixU().leftCols(r);
  return f;
}

// Vertices whose tight sets contain t, and the intersection of those sets.
std::pair<IndexSet, std::vector<int>> closure(const VRep& v, const IndexSet& t) {
  std::vector<int> members;
  IndexSet closed;
  bool first = true;
  for (int i = 0; i < static_cast<int>(v.vertices.size()); ++i) {
    if (!is_subset(t, v.tight[idx(i)])) continue;
    members.push_back(i);
    closed = first ? v.tight[idx(i)] : intersect_sets(closed, v.tight[idx(i)]);
    first = false;
  }
  return {closed, members};
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

IndexSet intersect_sets(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

int matrix_rank(const MatX& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatX> svd(m);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * std::max(top, 1.0)) ++r;
  }
  return r;
}

HPolytope::HPolytope(MatX normals, VecX offsets)
    : HPolytope(normals, offsets, std::vector<Provenance>(idx(static_cast<int>(normals.rows())),
                                                          Provenance::FromP),
                {}) {}

HPolytope::HPolytope(MatX normals, VecX offsets, std::vector<Provenance> provenance,
                     std::vector<int> source_rows)
    : normals_(std::move(normals)),
      offsets_(std::move(offsets)),
      provenance_(std::move(provenance)),
      source_rows_(std::move(source_rows)) {
  if (normals_.rows() != offsets_.size()) fail(Errc::InvalidArgument, "A and b disagree");
  if (!normals_.allFinite() || !offsets_.allFinite()) {
    fail(Errc::InvalidArgument, "non-finite halfspace data");
  }
  if (provenance_.size() != static_cast<std::size_t>(rows())) {
    fail(Errc::InvalidArgument, "one provenance tag per row");
  }
  if (source_rows_.empty()) {
    source_rows_.resize(idx(rows()));
    for (int i = 0; i < rows(); ++i) source_rows_[idx(i)] = i;
  }
  if (source_rows_.size() != static_cast<std::size_t>(rows())) {
    fail(Errc::InvalidArgument, "one source row per row");
  }
}

bool HPolytope::origin_interior() const {
  return rows() > 0 && (offsets_.array() > 0.0).all();
}

bool HPolytope::contains(const VecX& x, double eps) const {
  for (int i = 0; i < rows(); ++i) {
    if (normals_.row(i).dot(x) - offsets_(i) > eps * normals_.row(i).norm()) return false;
  }
  return true;
}

double chebyshev_radius(const HPolytope& h) {
  const int d = h.dim();
  LinearProgram lp;
  lp.c = VecX::Zero(d + 1);
  lp.c(d) = -1.0;
  lp.A_ub.resize(h.rows(), d + 1);
  lp.A_ub.leftCols(d) = h.normals();
  lp.A_ub.col(d) = h.normals().rowwise().norm();
  lp.b_ub = h.offsets();
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Unbounded) return std::numeric_limits<double>::infinity();
  if (r.status != LpStatus::Optimal) return 0.0;
  return std::max(0.0, r.x(d));
}

HPolytope validate_hrep(const HPolytope& h) {
  const int d = h.dim();
  if (d < 1) fail(Errc::InvalidArgument, "dimension must be at least 1");
  if (h.rows() < d + 1) fail(Errc::Unbounded, "fewer than d+1 halfspaces");
  for (int i = 0; i < h.rows(); ++i) {
    if (!(h.normals().row(i).norm() > 0.0)) fail(Errc::InvalidArgument, "zero normal");
  }
  for (int axis = 0; axis < d; ++axis) {
    for (double sgn : {1.0, -1.0}) {
      LinearProgram lp;
      lp.c = VecX::Zero(d);
      lp.c(axis) = -sgn;
      lp.A_ub = h.normals();
      lp.b_ub = h.offsets();
      const LpResult r = solve_lp(lp);
      if (r.status == LpStatus::Unbounded) fail(Errc::Unbounded);
      if (r.status == LpStatus::Infeasible) fail(Errc::EmptyInterior, "no feasible point");
    }
  }
  const double scale = 1.0 + h.offsets().cwiseAbs().maxCoeff();
  if (chebyshev_radius(h) <= 1e-12 * scale) fail(Errc::EmptyInterior);
  return h;
}

double default_eps_tight(const HPolytope& h) {
  return 1e-8 * (1.0 + (h.rows() > 0 ? h.offsets().cwiseAbs().maxCoeff() : 0.0));
}

namespace {

struct UnitRows {
  MatX a;
  VecX b;
};

UnitRows unit_rows(const HPolytope& h) {
  UnitRows u{h.normals(), h.offsets()};
  for (int i = 0; i < h.rows(); ++i) {
    const double n = u.a.row(i).norm();
    if (!(n > 0.0)) fail(Errc::InvalidArgument, "zero normal");
    u.a.row(i) /= n;
    u.b(i) /= n;
  }
  return u;
}

// Depth-first over size-`want` subsets of `rows` whose normals are linearly
// independent; `visit` gets the chosen rows and their Gram-Schmidt basis.
template <class Visit>
void independent_subsets(const MatX& a, const std::vector<int>& rows, int want, Visit&& visit) {
  std::vector<int> chosen;
  std::vector<VecX> basis;
  auto dfs = [&](auto&& self, std::size_t next) -> void {
    if (static_cast<int>(chosen.size()) == want) {
      visit(chosen, basis);
      return;
    }
    const std::size_t need = idx(want - static_cast<int>(chosen.size()));
    for (std::size_t k = next; k + need <= rows.size(); ++k) {
      VecX r = a.row(rows[k]).transpose();
      for (const auto& q : basis) r -= q.dot(r) * q;
      const double len = r.norm();
      if (len < 1e-9) continue;  // dependent on rows already chosen
      chosen.push_back(rows[k]);
      basis.push_back(r / len);
      self(self, k + 1);
      chosen.pop_back();
      basis.pop_back();
    }
  };
  dfs(dfs, 0);
}

std::vector<VecX> vertices_brute(const UnitRows& u, double eps_tight) {
  const int d = static_cast<int>(u.a.cols());
  const int m = static_cast<int>(u.a.rows());
  std::vector<int> all(idx(m));
  for (int i = 0; i < m; ++i) all[idx(i)] = i;
  std::vector<VecX> found;
  independent_subsets(u.a, all, d, [&](const std::vector<int>& chosen, const std::vector<VecX>&) {
    MatX a(d, d);
    VecX b(d);
    for (int k = 0; k < d; ++k) {
      a.row(k) = u.a.row(chosen[idx(k)]);
      b(k) = u.b(chosen[idx(k)]);
    }
    const VecX x = a.fullPivLu().solve(b);
    if (!x.allFinite()) return;
    if (((u.a * x - u.b).array() > eps_tight).any()) return;
    found.push_back(x);
  });
  return found;
}

// Vertices sorted by first coordinate for near-duplicate lookup.
class VertexIndex {
 public:
  explicit VertexIndex(double merge) : merge_(merge) {}

  /// Id of a stored vertex within `merge`, or -1.
  int find(const VecX& x) const {
    for (auto it = by_x0_.lower_bound(x(0) - merge_); it != by_x0_.end() && it->first <= x(0) + merge_;
         ++it) {
      if ((points_[idx(it->second)] - x).norm() <= merge_) return it->second;
    }
    return -1;
  }
  int insert(const VecX& x) {
    const int id = static_cast<int>(points_.size());
    points_.push_back(x);
    by_x0_.emplace(x(0), id);
    return id;
  }
  const std::vector<VecX>& points() const { return points_; }

 private:
  double merge_;
  std::vector<VecX> points_;
  std::multimap<double, int> by_x0_;
};

// Solves the tight rows at a point that should be a vertex; nullopt when
// they do not pin it down.
std::optional<VecX> snap_vertex(const UnitRows& u, const VecX& x, double eps_tight) {
  const int d = static_cast<int>(u.a.cols());
  std::vector<int> tight;
  for (int i = 0; i < u.a.rows(); ++i) {
    if (std::abs(u.a.row(i).dot(x) - u.b(i)) <= eps_tight) tight.push_back(i);
  }
  if (static_cast<int>(tight.size()) < d) return std::nullopt;
  MatX a(static_cast<Eigen::Index>(tight.size()), d);
  VecX b(static_cast<Eigen::Index>(tight.size()));
  for (std::size_t k = 0; k < tight.size(); ++k) {
    a.row(static_cast<Eigen::Index>(k)) = u.a.row(tight[k]);
    b(static_cast<Eigen::Index>(k)) = u.b(tight[k]);
  }
  const Eigen::ColPivHouseholderQR<MatX> qr(a);
  if (qr.rank() < d) return std::nullopt;
  const VecX y = qr.solve(b);
  if (!y.allFinite()) return std::nullopt;
  return y;
}

// Graph traversal: from each vertex, every independent (d-1)-subset of its
// tight rows spans a candidate edge; shoot along the feasible directions.
// nullopt means a numerical hiccup and the caller falls back to brute force.
std::optional<std::vector<VecX>> vertices_pivot(const HPolytope& h, const UnitRows& u,
                                                double eps_tight) {
  const int d = h.dim();
  const int m = h.rows();
  if (d == 1) return std::nullopt;
  LinearProgram lp;
  lp.c = VecX(d);
  for (int i = 0; i < d; ++i) lp.c(i) = 1.0 + std::sqrt(2.0 + i) * 1e-3 * (i + 1);
  lp.A_ub = u.a;
  lp.b_ub = u.b;
  const LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Unbounded) fail(Errc::Unbounded);
  if (r.status != LpStatus::Optimal) fail(Errc::EmptyInterior, "no feasible point");
  const auto start = snap_vertex(u, r.x, eps_tight);
  if (!start) return std::nullopt;

  double scale = 1.0 + u.b.cwiseAbs().maxCoeff();
  VertexIndex index(1e-9 * scale);
  index.insert(*start);
  std::queue<int> todo;
  todo.push(0);
  while (!todo.empty()) {
    const VecX x = index.points()[idx(todo.front())];
    todo.pop();
    std::vector<int> tight;
    for (int i = 0; i < m; ++i) {
      if (std::abs(u.a.row(i).dot(x) - u.b(i)) <= eps_tight) tight.push_back(i);
    }
    std::vector<VecX> dirs;
    bool broken = false;
    independent_subsets(u.a, tight, d - 1, [&](const std::vector<int>&, const std::vector<VecX>& basis) {
      if (broken) return;
      // Direction orthogonal to the chosen rows: Gram-Schmidt on the axes.
      VecX dir;
      double best = 0.0;
      for (int e = 0; e < d; ++e) {
        VecX v = VecX::Unit(d, e);
        for (const auto& q : basis) v -= q.dot(v) * q;
        if (v.norm() > best) {
          best = v.norm();
          dir = v;
        }
      }
      dir.normalize();
      for (double sgn : {1.0, -1.0}) {
        const VecX w = sgn * dir;
        bool feasible = true;
        for (int i : tight) {
          if (u.a.row(i).dot(w) > 1e-9) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        if (std::any_of(dirs.begin(), dirs.end(), [&](const VecX& o) { return (o - w).norm() < 1e-9; })) {
          continue;
        }
        dirs.push_back(w);
        double step = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
          const double rate = u.a.row(i).dot(w);
          const double slack = u.b(i) - u.a.row(i).dot(x);
          if (rate > 1e-12 && slack > eps_tight) step = std::min(step, slack / rate);
        }
        if (!std::isfinite(step)) fail(Errc::Unbounded);
        const auto y = snap_vertex(u, x + step * w, eps_tight);
        if (!y) {
          broken = true;
          return;
        }
        if (index.find(*y) < 0) todo.push(index.insert(*y));
      }
    });
    if (broken) return std::nullopt;
  }
  return index.points();
}

}  // namespace

VRep enumerate_vertices(const HPolytope& h, double eps_tight) {
  if (eps_tight < 0.0) eps_tight = default_eps_tight(h);
  const UnitRows u = unit_rows(h);
  std::vector<VecX> found;
  if (auto pivoted = vertices_pivot(h, u, eps_tight)) {
    found = std::move(*pivoted);
  } else {
    found = vertices_brute(u, eps_tight);
  }
  if (found.empty()) fail(Errc::Unbounded, "no vertices");
  return finish_vrep(h, found, eps_tight);
}

VRep enumerate_vertices_brute(const HPolytope& h, double eps_tight) {
  if (eps_tight < 0.0) eps_tight = default_eps_tight(h);
  std::vector<VecX> found = vertices_brute(unit_rows(h), eps_tight);
  if (found.empty()) fail(Errc::Unbounded, "no vertices");
  return finish_vrep(h, found, eps_tight);
}

std::vector<FaceD> faces_of_dim(const HPolytope& h, const VRep& v, int k) {
  const int d = h.dim();
  std::vector<FaceD> out;
  if (k < 0 || k > d || v.vertices.empty()) return out;
  if (k == d) {
    std::vector<int> all(v.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    out.push_back(make_face(v, {}, std::move(all)));
    return out;
  }
  // Closure of vertex tight sets under pairwise intersection.
  std::set<std::vector<int>> seen_members;
  std::vector<std::pair<IndexSet, std::vector<int>>> faces;
  std::queue<IndexSet> work;
  for (std::size_t i = 0; i < v.vertices.size(); ++i) work.push(v.tight[i]);
  while (!work.empty()) {
    IndexSet t = work.front();
    work.pop();
    auto [closed, members] = closure(v, t);
    if (closed.empty() || members.empty()) continue;
    if (!seen_members.insert(members).second) continue;
    for (std::size_t w = 0; w < v.vertices.size(); ++w) {
      IndexSet next = intersect_sets(closed, v.tight[w]);
      if (!next.empty() && next != closed) work.push(std::move(next));
    }
    faces.push_back({std::move(closed), std::move(members)});
  }
  for (auto& [t, members] : faces) {
    if (affine_rank(v.vertices, members, v.diameter) != k) continue;
    out.push_back(make_face(v, t, members));
  }
  std::sort(out.begin(), out.end(),
            [](const FaceD& a, const FaceD& b) { return a.vertices < b.vertices; });
  return out;
}

FaceD minimal_face(const HPolytope& h, const VRep& v, const VecX& x, double eps) {
  const IndexSet t = tight_rows(h, x, eps);
  if (t.empty()) {
    std::vector<int> all(v.vertices.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return make_face(v, {}, std::move(all));
  }
  auto [closed, members] = closure(v, t);
  if (members.empty()) fail(Errc::Degenerate, "tight rows at point select no vertex");
  FaceD f = make_face(v, std::move(closed), std::move(members));
  return f;
}

SkeletonGraph skeleton_graph(const HPolytope& h, const VRep& v) {
  const int n = static_cast<int>(v.vertices.size());
  const int d = h.dim();
  SkeletonGraph g;
  g.nodes = n;
  g.adjacency.assign(idx(n), {});
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const IndexSet t = intersect_sets(v.tight[idx(a)], v.tight[idx(b)]);
      if (static_cast<int>(t.size()) < d - 1) continue;
      if (matrix_rank(rows_of(h, t, true)) != d - 1) continue;
      bool other = false;
      for (int w = 0; w < n && !other; ++w) {
        if (w != a && w != b && is_subset(t, v.tight[idx(w)])) other = true;
      }
      if (other) continue;
      g.edges.push_back({a, b});
      g.adjacency[idx(a)].push_back(b);
      g.adjacency[idx(b)].push_back(a);
    }
  }
  // Connectivity.
  std::vector<bool> seen(idx(n), false);
  std::queue<int> q;
  if (n > 0) {
    q.push(0);
    seen[0] = true;
  }
  int count = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    ++count;
    for (int w : g.adjacency[idx(u)]) {
      if (!seen[idx(w)]) {
        seen[idx(w)] = true;
        q.push(w);
      }
    }
  }
  if (count != n) fail(Errc::DisconnectedSkeleton);
  return g;
}

std::vector<int> skeleton_path(const SkeletonGraph& g, int from, int to) {
  std::vector<int> prev(idx(g.nodes), -2);
  std::queue<int> q;
  q.push(from);
  prev[idx(from)] = -1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    if (u == to) break;
    std::vector<int> nb = g.adjacency[idx(u)];
    std::sort(nb.begin(), nb.end());
    for (int w : nb) {
      if (prev[idx(w)] == -2) {
        prev[idx(w)] = u;
        q.push(w);
      }
    }
  }
  if (prev[idx(to)] == -2) fail(Errc::DisconnectedSkeleton);
  std::vector<int> path;
  for (int u = to; u != -1; u = prev[idx(u)]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

HPolytope reflect(const HPolytope& h) {
  std::vector<Provenance> prov(idx(h.rows()), Provenance::FromNegP);
  return HPolytope(-h.normals(), h.offsets(), std::move(prov), h.source_rows());
}

HPolytope intersect(const HPolytope& a, const HPolytope& b) {
  if (a.dim() != b.dim()) fail(Errc::InvalidArgument, "dimension mismatch");
  MatX n(a.rows() + b.rows(), a.dim());
  n << a.normals(), b.normals();
  VecX off(a.rows() + b.rows());
  off << a.offsets(), b.offsets();
  std::vector<Provenance> prov = a.provenance();
  prov.insert(prov.end(), b.provenance().begin(), b.provenance().end());
  std::vector<int> src = a.source_rows();
  src.insert(src.end(), b.source_rows().begin(), b.source_rows().end());
  HPolytope out(std::move(n), std::move(off), std::move(prov), std::move(src));
  if (!a.origin_interior() || !b.origin_interior()) {
    fail(Errc::EmptyInterior, "origin must be interior to both operands");
  }
  return out;
}

HPolytope perturb(const HPolytope& h, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0)) fail(Errc::InvalidArgument, "magnitude must be nonnegative");
  if (!h.origin_interior()) fail(Errc::EmptyInterior, "perturbation needs the origin inside");
  if (magnitude == 0.0) return h;
  std::mt19937_64 rng(seed);
  VecX b = h.offsets();
  for (int i = 0; i < h.rows(); ++i) {
    const double eta = magnitude * (1.0 - uniform01(rng));  // (0, magnitude]
    b(i) *= 1.0 + eta;
  }
  return HPolytope(h.normals(), std::move(b), h.provenance(), h.source_rows());
}

HPolytope hull_of_points(const std::vector<VecX>& points) {
  if (points.empty()) fail(Errc::DegenerateSpan, "no points");
  const int d = static_cast<int>(points.front().size());
  const int n = static_cast<int>(points.size());
  for (const auto& p : points) {
    if (p.size() != d || !p.allFinite()) fail(Errc::InvalidArgument, "bad point");
  }
  if (n < d + 1) fail(Errc::DegenerateSpan, "fewer than d+1 points");
  const double diam = bbox_diagonal(points);
  const double eps = 1e-9 * std::max(diam, 1e-300);
  {
    std::vector<int> all(idx(n));
    for (int i = 0; i < n; ++i) all[idx(i)] = i;
    if (affine_rank(points, all, diam) < d) fail(Errc::DegenerateSpan);
  }

  std::vector<VecX> normals;
  std::vector<double> offsets;
  std::vector<int> chosen;
  auto add_facet = [&](const VecX& nrm, double off) {
    for (std::size_t f = 0; f < normals.size(); ++f) {
      if ((normals[f] - nrm).norm() <= 1e-9 && std::abs(offsets[f] - off) <= eps) return;
    }
    normals.push_back(nrm);
    offsets.push_back(off);
  };
  auto dfs = [&](auto&& self, int next) -> void {
    if (static_cast<int>(chosen.size()) == d) {
      const VecX& p0 = points[idx(chosen[0])];
      VecX nrm;
      if (d == 1) {
        nrm = VecX::Ones(1);
      } else {
        MatX m(d - 1, d);
        for (int k = 1; k < d; ++k) m.row(k - 1) = (points[idx(chosen[idx(k)])] - p0).transpose();
        Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        if (s.size() < d - 1 || s(d - 2) <= 1e-9 * std::max(diam, 1e-300)) return;
        nrm = svd.matrixV().col(d - 1);
      }
      const double off = nrm.dot(p0);
      bool all_le = true;
      bool all_ge = true;
      for (const auto& p : points) {
        const double s = nrm.dot(p) - off;
        if (s > eps) all_le = false;
        if (s < -eps) all_ge = false;
      }
      if (all_le && all_ge) return;
      if (all_le) add_facet(nrm, off);
      if (all_ge) add_facet(-nrm, -off);
      return;
    }
    const int need = d - static_cast<int>(chosen.size());
    for (int i = next; i <= n - need; ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  if (static_cast<int>(normals.size()) < d + 1) fail(Errc::DegenerateSpan, "too few facets");
  MatX a(static_cast<Eigen::Index>(normals.size()), d);
  VecX b(static_cast<Eigen::Index>(normals.size()));
  for (std::size_t f = 0; f < normals.size(); ++f) {
    a.row(static_cast<Eigen::Index>(f)) = normals[f].transpose();
    b(static_cast<Eigen::Index>(f)) = offsets[f];
  }
  return HPolytope(std::move(a), std::move(b));
}

HPolytope product(const HPolytope& a, const HPolytope& b) {
  const int d = a.dim() + b.dim();
  MatX n = MatX::Zero(a.rows() + b.rows(), d);
  n.topLeftCorner(a.rows(), a.dim()) = a.normals();
  n.bottomRightCorner(b.rows(), b.dim()) = b.normals();
  VecX off(a.rows() + b.rows());
  off << a.offsets(), b.offsets();
  std::vector<Provenance> prov = a.provenance();
  prov.insert(prov.end(), b.provenance().begin(), b.provenance().end());
  std::vector<int> src = a.source_rows();
  for (int s : b.source_rows()) src.push_back(s + a.rows());
  return HPolytope(std::move(n), std::move(off), std::move(prov), std::move(src));
}

HPolytope parse_hrep_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) rows.push_back(std::move(toks));
  }
  if (rows.empty() || rows[0].size() != 2) fail(Errc::ParseError, "H-rep header must be 'm d'");
  const long long m = parse_integer(rows[0][0]);
  const long long d = parse_integer(rows[0][1]);
  if (m < 1 || d < 1) fail(Errc::ParseError, "H-rep counts must be positive");
  if (static_cast<long long>(rows.size()) != m + 1) {
    fail(Errc::ParseError, "expected " + std::to_string(m) + " halfspace lines");
  }
  MatX a(m, d);
  VecX b(m);
  for (long long i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i + 1)];
    if (static_cast<long long>(r.size()) != d + 1) {
      fail(Errc::ParseError, "halfspace line needs d+1 numbers");
    }
    for (long long k = 0; k < d; ++k) a(i, k) = parse_real(r[static_cast<std::size_t>(k)]);
    b(i) = parse_real(r[static_cast<std::size_t>(d)]);
  }
  return HPolytope(std::move(a), std::move(b));
}

std::string format_hrep_text(const HPolytope& h) {
  std::string out = std::to_string(h.rows()) + " " + std::to_string(h.dim()) + "\n";
  for (int i = 0; i < h.rows(); ++i) {
    for (int k = 0; k < h.dim(); ++k) out += format_real(h.normals()(i, k)) + " ";
    out += format_real(h.offsets()(i)) + "\n";
  }
  return out;
}

}  // namespace wbal
