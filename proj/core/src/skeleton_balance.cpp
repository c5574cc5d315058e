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

#include "wbal/skeleton_balance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <set>

#include "wbal/balance2d.hpp"
#include "wbal/error.hpp"
#include "wbal/lp.hpp"

namespace wbal {
namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

constexpr std::array<double, 5> kMagnitudes = {1e-7, 3e-7, 1e-6, 3e-6, 1e-5};

// splitmix64 finalizer over (seed, attempt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + attempt + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Dimension of the face named by a tight set: affine rank of its vertices.
int face_dim(const VRep& v, const IndexSet& tight) {
  std::vector<const VecX*> members;
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    if (is_subset(tight, v.tight[i])) members.push_back(&v.vertices[i]);
  }
  if (members.empty()) return -1;
  if (members.size() == 1) return 0;
  MatX diff(static_cast<Eigen::Index>(members.size() - 1), members.front()->size());
  for (std::size_t i = 1; i < members.size(); ++i) {
    diff.row(static_cast<Eigen::Index>(i - 1)) = (*members[i] - *members.front()).transpose();
  }
  return matrix_rank(diff);
}

bool all_simple(const VRep& v, int d) {
  return std::all_of(v.tight.begin(), v.tight.end(),
                     [d](const IndexSet& t) { return static_cast<int>(t.size()) == d; });
}

int count_from_p(const HPolytope& c, const IndexSet& t) {
  int j = 0;
  for (int r : t) {
    if (c.provenance()[idx(r)] == Provenance::FromP) ++j;
  }
  return j;
}

VRep negated(const VRep& v) {
  VRep out = v;
  for (auto& x : out.vertices) x = -x;
  return out;
}

// Q restricted to the affine plane {t + B y}: rows of `tight` become
// equalities and are dropped, as are rows constant on the plane.
HPolytope restrict_to(const HPolytope& q, const IndexSet& tight, const MatX& basis,
                      const VecX& t) {
  std::vector<int> keep;
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> offs;
  for (int i = 0; i < q.rows(); ++i) {
    if (std::binary_search(tight.begin(), tight.end(), i)) continue;
    const Eigen::RowVectorXd a = q.normals().row(i) * basis;
    const double b = q.offsets()(i) - q.normals().row(i).dot(t);
    if (a.norm() <= 1e-12 * q.normals().row(i).norm()) continue;
    rows.push_back(a);
    offs.push_back(b);
    keep.push_back(i);
  }
  MatX a(static_cast<Eigen::Index>(rows.size()), basis.cols());
  VecX b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r];
    b(static_cast<Eigen::Index>(r)) = offs[r];
  }
  std::vector<Provenance> prov(rows.size(), Provenance::FromP);
  return HPolytope(std::move(a), std::move(b), std::move(prov), std::move(keep));
}

// Convex polygon from the vertices of a 2-polytope, counterclockwise.
Polygon2 polygon_of(const VRep& v) {
  Point2 c = Point2::Zero();
  for (const auto& x : v.vertices) c += Point2(x(0), x(1));
  c /= static_cast<double>(v.vertices.size());
  std::vector<Point2> pts;
  for (const auto& x : v.vertices) pts.emplace_back(x(0), x(1));
  std::sort(pts.begin(), pts.end(), [&](const Point2& a, const Point2& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) < std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  return validate_polygon(std::move(pts));
}

struct Chart {
  VecX origin;
  MatX basis;  // columns in the original space
  VecX map(const VecX& y) const { return origin + basis * y; }
};

struct EdgeSolve {
  std::array<double, 3> t{};
  double residual = 0.0;
  bool singular = false;
};

class EdgeTriples {
 public:
  EdgeTriples(const HPolytope& h, const VecX& target) : h_(h), target_(target) {
    if (h.dim() != 3) fail(Errc::InvalidArgument, "edge triples need a 3-polytope");
    v_ = enumerate_vertices(h);
    const SkeletonGraph g = skeleton_graph(h, v_);
    for (const auto& [a, b] : g.edges) {
      u_.push_back(v_.vertices[idx(a)]);
      dir_.push_back(v_.vertices[idx(b)] - v_.vertices[idx(a)]);
    }
    scale_ = std::max(v_.diameter, 1e-300);
    if (!h.contains(target, default_eps_tight(h))) fail(Errc::CenterOutside);
  }

  int edges() const { return static_cast<int>(u_.size()); }
  double diameter() const { return scale_; }
  VecX point(int e, double t) const { return u_[idx(e)] + t * dir_[idx(e)]; }

  Eigen::Matrix3d system(int i, int j, int k) const {
    Eigen::Matrix3d m;
    m.col(0) = dir_[idx(i)];
    m.col(1) = dir_[idx(j)];
    m.col(2) = dir_[idx(k)];
    return m;
  }

  bool singular(int i, int j, int k) const {
    return !(std::abs(system(i, j, k).determinant()) > 1e-12 * scale_ * scale_ * scale_);
  }

  /// Parameters putting one point on each edge with barycenter target.
  std::optional<EdgeSolve> solve(int i, int j, int k) const {
    const Eigen::Matrix3d m = system(i, j, k);
    const Eigen::Vector3d rhs = 3.0 * target_ - u_[idx(i)] - u_[idx(j)] - u_[idx(k)];
    const double eps_t = 1e-9;
    EdgeSolve s;
    Eigen::Vector3d t;
    if (!singular(i, j, k)) {
      t = m.partialPivLu().solve(rhs);
      for (int q = 0; q < 3; ++q) {
        if (t(q) < -eps_t || t(q) > 1.0 + eps_t) return std::nullopt;
      }
    } else {
      // The solution set is a line or plane (or empty); let an LP find a
      // point of it inside the parameter cube.
      s.singular = true;
      LinearProgram lp;
      lp.c = VecX::Zero(3);
      lp.A_ub = MatX::Identity(3, 3);
      lp.b_ub = VecX::Ones(3);
      lp.A_eq = m;
      lp.b_eq = rhs;
      lp.nonneg = {0, 1, 2};
      const LpResult r = solve_lp(lp);
      if (r.status != LpStatus::Optimal) return std::nullopt;
      t = r.x;
    }
    t = t.cwiseMax(0.0).cwiseMin(1.0);
    s.residual = (m * t - rhs).norm();
    if (s.residual > 1e-10 * scale_) return std::nullopt;
    s.t = {t(0), t(1), t(2)};
    return s;
  }

 private:
  const HPolytope& h_;
  VecX target_;
  VRep v_;
  std::vector<VecX> u_;
  std::vector<VecX> dir_;
  double scale_ = 1.0;
};

class Placer {
 public:
  Placer(std::vector<VecX>& out, std::uint64_t seed) : out_(out), seed_(seed) {}

  void place(const HPolytope& q, const Chart& chart, int n) {
    const int f = q.dim();
    if (n < 1) fail(Errc::InvalidArgument, "need at least one point");
    if (f <= 1) return copies(chart.map(VecX::Zero(f)), n);
    const VRep vq = enumerate_vertices(q);
    const double eps = default_eps_tight(q);
    const FaceD here = minimal_face(q, vq, VecX::Zero(f), eps);
    if (here.dim < f) {
      // Target on the relative boundary: continue inside the smallest face.
      return descend(q, chart, here, VecX::Zero(f), n);
    }
    if (f > n) fail(Errc::InvalidArgument, "more dimensions than points");
    if (f == 2) return planar(vq, chart, n);
    if (n % 2 == 0) {
      const HalvingWitness w = halving_point(q, seed_++);
      const FaceD neg = minimal_face(q, vq, -w.x, eps);
      descend(q, chart, w.face_P, w.x, n / 2);
      descend(q, chart, neg, -w.x, n / 2);
      return;
    }
    if (n == 3 && f == 3) {
      const SkeletonPlacement three = three_on_edges(q, VecX::Zero(3));
      for (const auto& p : three.points) out_.push_back(chart.map(p.x));
      return;
    }
    fail(Errc::UnsupportedDimension, "no construction for this point count");
  }

 private:
  void copies(const VecX& x, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(x);
  }

  void descend(const HPolytope& q, const Chart& chart, const FaceD& face, const VecX& t, int n) {
    if (face.dim <= 1) return copies(chart.map(t), n);
    const HPolytope sub = restrict_to(q, face.tight, face.basis, t);
    place(sub, Chart{chart.map(t), chart.basis * face.basis}, n);
  }

  void planar(const VRep& vq, const Chart& chart, int n) {
    const Polygon2 poly = polygon_of(vq);
    auto lift = [&](const BoundaryPoint2& bp) {
      const Point2 p = eval_boundary(poly, bp);
      VecX y(2);
      y << p.x(), p.y();
      return chart.map(y);
    };
    if (n % 2 == 0) {
      const AntipodalPair pair = antipodal_about(poly, Point2::Zero());
      for (int i = 0; i < n / 2; ++i) {
        out_.push_back(lift(pair.first));
        out_.push_back(lift(pair.second));
      }
      return;
    }
    if (n == 3) {
      const Placement2 pl = balance_iterative(poly, WeightSet({1.0, 1.0, 1.0}));
      for (const auto& a : pl.assignments) out_.push_back(lift(a.at));
      return;
    }
    fail(Errc::UnsupportedDimension, "no planar construction for this point count");
  }

  std::vector<VecX>& out_;
  std::uint64_t seed_;
};

SkeletonPlacement attach_hosts(const HPolytope& h, const std::vector<VecX>& xs, const VecX& target) {
  const VRep v = enumerate_vertices(h);
  const double eps = default_eps_tight(h);
  SkeletonPlacement pl;
  pl.target = target;
  for (const auto& x : xs) {
    const FaceD f = minimal_face(h, v, x, eps);
    if (f.dim > 1) fail(Errc::Degenerate, "constructed point is off the 1-skeleton");
    pl.points.push_back({x, f.tight, f.vertices, f.dim});
  }
  return pl;
}

SkeletonPlacement place_all(const HPolytope& h, int n, std::uint64_t seed) {
  if (!h.origin_interior()) fail(Errc::OriginOutside, "origin must be interior");
  const int d = h.dim();
  std::vector<VecX> xs;
  Placer placer(xs, seed);
  placer.place(h, Chart{VecX::Zero(d), MatX::Identity(d, d)}, n);
  return attach_hosts(h, xs, VecX::Zero(d));
}

}  // namespace

double segment_distance(const VecX& x, const VecX& a, const VecX& b) {
  const VecX ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (x - a).norm();
  const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
  return (a + t * ab - x).norm();
}

HalvingWitness halving_point(const HPolytope& h, std::uint64_t seed) {
  if (!h.origin_interior()) fail(Errc::OriginOutside, "halving needs the origin inside");
  const int d = h.dim();
  const int target = (d + 1) / 2;
  const VRep vp = enumerate_vertices(h);
  const VRep vneg = negated(vp);
  const HPolytope neg = reflect(h);
  const HPolytope c0 = intersect(h, neg);
  const double eps = default_eps_tight(h);

  for (int attempt = 0; attempt <= static_cast<int>(kMagnitudes.size()); ++attempt) {
    // Perturb P and reflect the result, so the perturbed body stays
    // centrally symmetric and -v is again a vertex.
    const double mag = attempt == 0 ? 0.0 : kMagnitudes[idx(attempt - 1)];
    const HPolytope pt = perturb(h, mag, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const HPolytope c = intersect(pt, reflect(pt));
    const VRep vc = enumerate_vertices(c);
    if (!all_simple(vc, d)) continue;
    const SkeletonGraph g = skeleton_graph(c, vc);

    const int start = 0;
    int goal = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int w = 0; w < static_cast<int>(vc.vertices.size()); ++w) {
      const double dist = (vc.vertices[idx(w)] + vc.vertices[idx(start)]).norm();
      if (dist < best) {
        best = dist;
        goal = w;
      }
    }
    int chosen = -1;
    for (int w : skeleton_path(g, start, goal)) {
      if (count_from_p(c, vc.tight[idx(w)]) == target) {
        chosen = w;
        break;
      }
    }
    if (chosen < 0) {
      for (int w = 0; w < static_cast<int>(vc.vertices.size()); ++w) {
        if (count_from_p(c, vc.tight[idx(w)]) == target) {
          chosen = w;
          break;
        }
      }
    }
    if (chosen < 0) fail(Errc::WalkFailed);

    // Back to the unperturbed body: same rows, original offsets.
    const IndexSet& s = vc.tight[idx(chosen)];
    MatX a(d, d);
    VecX b(d);
    for (int r = 0; r < d; ++r) {
      a.row(r) = c0.normals().row(s[idx(r)]);
      b(r) = c0.offsets()(s[idx(r)]);
    }
    const VecX x = a.fullPivLu().solve(b);
    if (!x.allFinite() || !c0.contains(x, eps)) continue;

    HalvingWitness w;
    w.x = x;
    w.face_P = minimal_face(h, vp, x, eps);
    w.face_negP = minimal_face(neg, vneg, x, eps);
    w.j = count_from_p(c, s);
    w.retries = attempt;
    w.magnitude = mag;
    if (w.face_P.dim > d / 2 || w.face_negP.dim > target) continue;
    return w;
  }
  fail(Errc::PerturbationFailed);
}

HalvingCertificate verify_halving(const HPolytope& h, const VecX& x, const IndexSet& tight_P,
                                  const IndexSet& tight_negP, double eps_geom) {
  const int d = h.dim();
  if (x.size() != d) fail(Errc::InvalidArgument, "witness dimension mismatch");
  for (const IndexSet* t : {&tight_P, &tight_negP}) {
    for (int r : *t) {
      if (r < 0 || r >= h.rows()) fail(Errc::IndexOutOfRange, "tight row " + std::to_string(r));
    }
  }
  HalvingCertificate cert;
  cert.eps_geom = eps_geom;
  // x in P with the rows of tight_P active, and the same for -x.
  for (const auto& [point, tight] : {std::pair{VecX(x), &tight_P}, std::pair{VecX(-x), &tight_negP}}) {
    for (int i = 0; i < h.rows(); ++i) {
      const double n = h.normals().row(i).norm();
      const double r = (h.normals().row(i).dot(point) - h.offsets()(i)) / n;
      const bool active = std::binary_search(tight->begin(), tight->end(), i);
      cert.membership = std::max(cert.membership, active ? std::abs(r) : std::max(r, 0.0));
    }
  }
  const VRep v = enumerate_vertices(h);
  cert.dim_P = face_dim(v, tight_P);
  cert.dim_negP = face_dim(v, tight_negP);
  cert.pass = cert.membership <= eps_geom && cert.dim_P >= 0 && cert.dim_negP >= 0 &&
              cert.dim_P <= d / 2 && cert.dim_negP <= (d + 1) / 2;
  return cert;
}

SkeletonPlacement pow2_points(const HPolytope& h, int k, std::uint64_t seed) {
  if (k < 0 || k > 20) fail(Errc::InvalidArgument, "k out of range");
  const int n = 1 << k;
  if (h.dim() > n) fail(Errc::InvalidArgument, "need d <= 2^k");
  return place_all(h, n, seed);
}

SkeletonPlacement three_on_edges(const HPolytope& h, const VecX& target_in) {
  const VecX target = target_in.size() == 0 ? VecX::Zero(h.dim()) : target_in;
  const EdgeTriples solver(h, target);
  const int e = solver.edges();
  for (int i = 0; i < e; ++i) {
    for (int j = i; j < e; ++j) {
      for (int k = j; k < e; ++k) {
        const auto s = solver.solve(i, j, k);
        if (!s) continue;
        const std::vector<VecX> xs = {solver.point(i, s->t[0]), solver.point(j, s->t[1]),
                                      solver.point(k, s->t[2])};
        return attach_hosts(h, xs, target);
      }
    }
  }
  fail(Errc::NotFound, "no edge triple balances the target (" + std::to_string(e) + " edges)");
}

EdgeTripleAudit three_on_edges_audit(const HPolytope& h, const VecX& target_in) {
  const VecX target = target_in.size() == 0 ? VecX::Zero(h.dim()) : target_in;
  const EdgeTriples solver(h, target);
  EdgeTripleAudit audit;
  const int e = solver.edges();
  audit.edges = e;
  for (int i = 0; i < e; ++i) {
    for (int j = i; j < e; ++j) {
      for (int k = j; k < e; ++k) {
        ++audit.triples;
        if (solver.singular(i, j, k)) {
          ++audit.singular;
        } else {
          ++audit.nonsingular;
        }
        const auto s = solver.solve(i, j, k);
        if (!s) continue;
        ++audit.solutions;
        audit.max_residual = std::max(audit.max_residual, s->residual);
      }
    }
  }
  return audit;
}

namespace {

struct FaceOutline {
  std::vector<int> ids;  // face vertex ids, counterclockwise in the frame
  PlaneFrame frame;
  std::optional<Polygon2> poly;
};

FaceOutline outline_of(const Polyhedron3& poly, int f) {
  FaceOutline out;
  out.ids = poly.faces()[idx(f)];
  out.frame = PlaneFrame::of(Plane3{poly.face_normal(f), poly.face_offset(f)});
  std::vector<Point2> pts;
  for (int v : out.ids) pts.push_back(out.frame.project(poly.vertex(v)));
  double area2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) area2 += cross2(pts[i], pts[(i + 1) % pts.size()]);
  if (area2 < 0.0) {
    std::reverse(out.ids.begin(), out.ids.end());
    std::reverse(pts.begin(), pts.end());
  }
  out.poly = validate_polygon(std::move(pts));
  return out;
}

// Splits a point q of face f into two points on the face's edges with
// midpoint q; collapses onto q when it already sits on an edge.
std::array<MeshEdgePoint, 2> split_on_face(const Polyhedron3& poly, int f, const Point3& q) {
  const FaceOutline fo = outline_of(poly, f);
  const double eps = 1e-9 * poly.diameter();
  const Point2 q2 = fo.frame.project(q);
  const int n = static_cast<int>(fo.ids.size());
  auto host = [&](const BoundaryPoint2& bp) {
    MeshEdgePoint p;
    p.x = fo.frame.embed(eval_boundary(*fo.poly, bp));
    p.u = fo.ids[idx(bp.edge)];
    p.v = fo.ids[idx((bp.edge + 1) % n)];
    return p;
  };
  const PointLocation2 loc = locate_point(*fo.poly, q2, eps);
  if (loc.side == Side::OnBoundary) {
    MeshEdgePoint p;
    p.x = q;
    p.u = fo.ids[idx(loc.at.edge)];
    p.v = fo.ids[idx((loc.at.edge + 1) % n)];
    return {p, p};
  }
  const AntipodalPair pair = antipodal_about(*fo.poly, q2);
  return {host(pair.first), host(pair.second)};
}

}  // namespace

MeshPlacement four_on_edges(const Polyhedron3& poly, const Plane3& plane) {
  if (std::abs(plane.offset) > 1e-12 * poly.diameter()) {
    fail(Errc::InvalidArgument, "plane must pass through the origin");
  }
  const double eps = 1e-9 * poly.diameter();
  if (side3(poly, Point3::Zero(), eps).side == Side::Outside) fail(Errc::OriginOutside);
  const CrossSection cs = cross_section(poly, plane);
  const AntipodalPair pair = antipodal_about(cs.polygon, cs.frame.project(Point3::Zero()));
  MeshPlacement out;
  for (const BoundaryPoint2& bp : {pair.first, pair.second}) {
    const Point3 q = cs.frame.embed(eval_boundary(cs.polygon, bp));
    const int face = cs.edge_face[idx(bp.edge)];
    for (const auto& p : split_on_face(poly, face, q)) out.points.push_back(p);
  }
  return out;
}

SkeletonPlacement compose_balance(const HPolytope& h, std::uint64_t seed) {
  int n = h.dim();
  if (n < 1) fail(Errc::InvalidArgument, "dimension must be positive");
  int threes = 0;
  while (n % 2 == 0) n /= 2;
  while (n % 3 == 0) {
    n /= 3;
    ++threes;
  }
  if (n != 1 || threes > 1) {
    fail(Errc::UnsupportedDimension, "d = " + std::to_string(h.dim()) + " is not 2^i * 3^j, j <= 1");
  }
  return place_all(h, h.dim(), seed);
}

HPolytope prop9_fixture(int d) {
  if (d < 2) fail(Errc::InvalidArgument, "prop9 fixture needs d >= 2");
  // Triangle with vertices v_i = (1,0), (-1/2, +-sqrt(3)/2): the edge
  // opposite v_i is {-v_i . x = 1/2}.
  const double h3 = std::sqrt(3.0) / 2.0;
  MatX ta(3, 2);
  ta << -1.0, 0.0, 0.5, -h3, 0.5, h3;
  const HPolytope tri(ta, VecX::Constant(3, 0.5));
  std::optional<HPolytope> out;
  if (d % 2 == 1) {
    MatX ia(2, 1);
    ia << 1.0, -1.0;
    VecX ib(2);
    ib << 2.0, 1.0;
    out = HPolytope(ia, ib);
  }
  for (int i = 0; i < d / 2; ++i) out = out ? product(*out, tri) : tri;
  return *out;
}

bool prop9_check(const HPolytope& h, int k) {
  if (k < 0) fail(Errc::InvalidArgument, "k must be nonnegative");
  const VRep v = enumerate_vertices(h);
  const int d = h.dim();
  const double eps = 1e-9 * (1.0 + h.offsets().cwiseAbs().maxCoeff());
  for (int dim = 0; dim <= std::min(k, d); ++dim) {
    for (const FaceD& f : faces_of_dim(h, v, dim)) {
      // min tau : x = sum lambda_j v_j, sum lambda = 1, lambda >= 0,
      //           -a_i . x - tau |a_i| <= b_i.   tau* <= 0 means f meets -P.
      const int nv = static_cast<int>(f.vertices.size());
      LinearProgram lp;
      lp.c = VecX::Zero(nv + 1);
      lp.c(nv) = 1.0;
      lp.A_ub = MatX::Zero(h.rows(), nv + 1);
      for (int i = 0; i < h.rows(); ++i) {
        for (int j = 0; j < nv; ++j) {
          lp.A_ub(i, j) = -h.normals().row(i).dot(v.vertices[idx(f.vertices[idx(j)])]);
        }
        lp.A_ub(i, nv) = -h.normals().row(i).norm();
      }
      lp.b_ub = h.offsets();
      lp.A_eq = MatX::Zero(1, nv + 1);
      lp.A_eq.leftCols(nv).setOnes();
      lp.b_eq = VecX::Ones(1);
      for (int j = 0; j < nv; ++j) lp.nonneg.push_back(j);
      const LpResult r = solve_lp(lp);
      if (r.status != LpStatus::Optimal) fail(Errc::Degenerate, "face LP failed");
      if (r.value <= eps) return false;
    }
  }
  return true;
}

SkeletonCertificate verify_skeleton(const HPolytope& h, const SkeletonPlacement& pl,
                                    double eps_geom, double eps_bal) {
  SkeletonCertificate cert;
  cert.eps_geom = eps_geom;
  cert.eps_bal = eps_bal;
  const VRep v = enumerate_vertices(h);
  const int d = h.dim();
  VecX sum = VecX::Zero(d);
  for (const auto& p : pl.points) {
    if (p.x.size() != d) fail(Errc::InvalidArgument, "point dimension mismatch");
    sum += p.x;
    std::vector<int> members;
    for (int i = 0; i < static_cast<int>(v.vertices.size()); ++i) {
      if (is_subset(p.host_tight, v.tight[idx(i)])) members.push_back(i);
    }
    double dist = std::numeric_limits<double>::infinity();
    int dim = d;
    if (p.host_tight.empty() || members.empty()) {
      dim = d;
    } else if (members.size() == 1) {
      dim = 0;
      dist = (p.x - v.vertices[idx(members[0])]).norm();
    } else if (members.size() == 2) {
      dim = 1;
      dist = segment_distance(p.x, v.vertices[idx(members[0])], v.vertices[idx(members[1])]);
    } else {
      dim = 2;  // three or more vertices span at least a polygon
    }
    cert.max_host_dim = std::max(cert.max_host_dim, dim);
    cert.max_membership = std::max(cert.max_membership, dist);
  }
  const VecX target = pl.target.size() == d ? pl.target : VecX::Zero(d);
  cert.residual = (sum - static_cast<double>(pl.points.size()) * target).norm();
  cert.pass = cert.residual <= eps_bal && cert.max_membership <= eps_geom && cert.max_host_dim <= 1;
  return cert;
}

SkeletonCertificate verify_mesh_placement(const Polyhedron3& poly, const MeshPlacement& pl,
                                          double eps_geom, double eps_bal) {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : poly.faces()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % f.size()];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  const int nv = static_cast<int>(poly.vertices().size());
  SkeletonCertificate cert;
  cert.eps_geom = eps_geom;
  cert.eps_bal = eps_bal;
  Point3 sum = Point3::Zero();
  for (const auto& p : pl.points) {
    sum += p.x;
    const bool valid_ids = p.u >= 0 && p.u < nv && p.v >= 0 && p.v < nv;
    const bool is_edge = valid_ids && (p.u == p.v || edges.count({std::min(p.u, p.v),
                                                                   std::max(p.u, p.v)}) > 0);
    if (!is_edge) {
      cert.max_membership = std::numeric_limits<double>::infinity();
      cert.max_host_dim = 2;
      continue;
    }
    cert.max_host_dim = std::max(cert.max_host_dim, p.u == p.v ? 0 : 1);
    cert.max_membership =
        std::max(cert.max_membership, segment_distance(p.x, poly.vertex(p.u), poly.vertex(p.v)));
  }
  cert.residual = sum.norm();
  cert.pass = cert.residual <= eps_bal && cert.max_membership <= eps_geom && cert.max_host_dim <= 1;
  return cert;
}

}  // namespace wbal
