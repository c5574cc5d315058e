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

#include "wbal/tripodal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "wbal/error.hpp"

namespace wbal {
namespace {

using Vec3 = Eigen::Vector3d;

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int side_sign(Side s) {
  switch (s) {
    case Side::Inside:
      return 1;
    case Side::Outside:
      return -1;
    case Side::OnBoundary:
      return 0;
  }
  return 0;
}

TripodalTriple make_triple(const Polyhedron3& poly, const Point3& a, const Point3& b,
                           const Point3& c) {
  TripodalTriple tri;
  tri.a = a;
  tri.b = b;
  tri.c = c;
  tri.at_a = nearest_surface_point(poly, a).at;
  tri.at_b = nearest_surface_point(poly, b).at;
  tri.at_c = nearest_surface_point(poly, c).at;
  tri.radius = a.norm();
  return tri;
}

bool changes_sign(double a, double b, double c, double d) {
  const double lo = std::min({a, b, c, d});
  const double hi = std::max({a, b, c, d});
  return lo <= 0.0 && hi >= 0.0;
}

// ---- grid search ----------------------------------------------------------

class Refiner {
 public:
  Refiner(const TripodMap& map, const TripodalSearchOptions& opts)
      : map_(map), opts_(opts), diam_(map.polyhedron().diameter()) {}

  std::optional<TripodalResult> refine(double t0, double t1, double th0, double th1,
                                       int depth) const {
    if (auto r = newton(0.5 * (t0 + t1), 0.5 * (th0 + th1))) return r;
    if (depth >= opts_.subdivision_depth) return std::nullopt;
    const double tm = 0.5 * (t0 + t1);
    const double hm = 0.5 * (th0 + th1);
    const double ts[3] = {t0, tm, t1};
    const double hs[3] = {th0, hm, th1};
    Eigen::Vector2d g[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) g[i][j] = map_.g(ts[i], hs[j]);
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        bool both = true;
        for (int k = 0; k < 2; ++k) {
          both = both && changes_sign(g[i][j](k), g[i + 1][j](k), g[i][j + 1](k),
                                      g[i + 1][j + 1](k));
        }
        if (!both) continue;
        if (auto r = refine(ts[i], ts[i + 1], hs[j], hs[j + 1], depth + 1)) return r;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<TripodalResult> newton(double t, double th) const {
    const double tol = 1e-12 * diam_;
    const double h = 1e-6;
    Eigen::Vector2d g = map_.g(t, th);
    for (int it = 0; it < opts_.newton_iterations; ++it) {
      if (g.cwiseAbs().maxCoeff() <= tol) break;
      const double tp = std::min(1.0, t + h);
      const double tm = std::max(0.0, t - h);
      Eigen::Matrix2d jac;
      jac.col(0) = (map_.g(tp, th) - map_.g(tm, th)) / (tp - tm);
      jac.col(1) = (map_.g(t, th + h) - map_.g(t, th - h)) / (2.0 * h);
      const double det = jac.determinant();
      if (!std::isfinite(det) || std::abs(det) < 1e-300) return std::nullopt;
      const Eigen::Vector2d step = -jac.inverse() * g;
      double lambda = 1.0;
      bool moved = false;
      while (lambda > 1.0 / 1024.0) {
        const double nt = std::clamp(t + lambda * step(0), 0.0, 1.0);
        const double nth = th + lambda * step(1);
        const Eigen::Vector2d ng = map_.g(nt, nth);
        if (ng.norm() < g.norm()) {
          t = nt;
          th = nth;
          g = ng;
          moved = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!moved) break;
    }
    if (g.cwiseAbs().maxCoeff() > 1e-10 * diam_) return std::nullopt;
    const Point3 a = map_.a(t);
    const auto [b, c] = map_.companions(t, th);
    TripodalResult res;
    res.triple = make_triple(map_.polyhedron(), a, b, c);
    res.method = TripodalMethod::GridSearch;
    res.t = t;
    res.theta = th;
    const auto cert = verify_tripodal(map_.polyhedron(), res.triple, 1e-9 * diam_, 1e-9 * diam_);
    if (!cert.pass) return std::nullopt;
    return res;
  }

  const TripodMap& map_;
  const TripodalSearchOptions& opts_;
  double diam_;
};

std::optional<TripodalResult> scan_grid(const TripodMap& map, const TripodalSearchOptions& opts,
                                        int n, int m) {
  const Refiner refiner(map, opts);
  const double pi = std::numbers::pi;
  std::vector<Eigen::Vector2d> prev(idx(m + 1));
  std::vector<Eigen::Vector2d> cur(idx(m + 1));
  for (int j = 0; j <= m; ++j) prev[idx(j)] = map.g(0.0, pi * j / m);
  for (int i = 1; i <= n; ++i) {
    const double t0 = static_cast<double>(i - 1) / n;
    const double t1 = static_cast<double>(i) / n;
    for (int j = 0; j <= m; ++j) cur[idx(j)] = map.g(t1, pi * j / m);
    for (int j = 0; j < m; ++j) {
      bool both = true;
      for (int k = 0; k < 2; ++k) {
        both = both && changes_sign(prev[idx(j)](k), prev[idx(j + 1)](k), cur[idx(j)](k),
                                    cur[idx(j + 1)](k));
      }
      if (!both) continue;
      if (auto r = refiner.refine(t0, t1, pi * j / m, pi * (j + 1) / m, 0)) {
        r->grid = n;
        return r;
      }
    }
    std::swap(prev, cur);
  }
  return std::nullopt;
}

// ---- face triples ---------------------------------------------------------

struct FaceInfo {
  Vec3 normal;
  double offset = 0.0;
  PlaneFrame frame;
  std::optional<Polygon2> outline;  // face polygon in frame coordinates
  Eigen::Vector2d lo, hi;          // frame-coordinate bounding box
  Vec3 box_lo, box_hi;
  double r_min = 0.0;
  double r_max = 0.0;
  Vec3 axis;
  double half_angle = 0.0;  // >= pi/2 means "no usable cone"
};

std::vector<FaceInfo> describe_faces(const Polyhedron3& poly) {
  std::vector<FaceInfo> info(idx(poly.num_faces()));
  for (int f = 0; f < poly.num_faces(); ++f) {
    FaceInfo& fi = info[idx(f)];
    fi.normal = poly.face_normal(f);
    fi.offset = poly.face_offset(f);
    fi.frame = PlaneFrame::of(Plane3{fi.normal, fi.offset});
    const auto& face = poly.faces()[idx(f)];
    std::vector<Point2> pts;
    fi.lo = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
    fi.hi = -fi.lo;
    fi.box_lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    fi.box_hi = -fi.box_lo;
    Vec3 centroid = Vec3::Zero();
    for (int v : face) {
      const Point3& p = poly.vertex(v);
      pts.push_back(fi.frame.project(p));
      fi.lo = fi.lo.cwiseMin(pts.back());
      fi.hi = fi.hi.cwiseMax(pts.back());
      fi.box_lo = fi.box_lo.cwiseMin(p);
      fi.box_hi = fi.box_hi.cwiseMax(p);
      fi.r_max = std::max(fi.r_max, p.norm());
      centroid += p;
    }
    fi.outline = validate_polygon(pts);
    fi.r_min = std::numeric_limits<double>::infinity();
    for (const auto& t : poly.triangles()) {
      if (t.face != f) continue;
      const Point3& a = poly.vertex(t.v[0]);
      const Point3& b = poly.vertex(t.v[1]);
      const Point3& c = poly.vertex(t.v[2]);
      const Vec3 w = closest_point_barycentric(Point3::Zero(), a, b, c);
      fi.r_min = std::min(fi.r_min, (w(0) * a + w(1) * b + w(2) * c).norm());
    }
    centroid /= static_cast<double>(face.size());
    fi.half_angle = std::numbers::pi;
    if (centroid.norm() > 0.0 && fi.r_min > 0.0) {
      fi.axis = centroid.normalized();
      double worst = 0.0;
      for (int v : face) {
        const Vec3 d = poly.vertex(v).normalized();
        worst = std::max(worst, std::acos(std::clamp(d.dot(fi.axis), -1.0, 1.0)));
      }
      // Directions of a convex face stay inside the cap of its vertices as
      // long as the cap is less than a hemisphere.
      if (worst < 0.45 * std::numbers::pi) fi.half_angle = worst;
    }
  }
  return info;
}

bool cones_compatible(const FaceInfo& x, const FaceInfo& y) {
  if (x.half_angle >= std::numbers::pi / 2 || y.half_angle >= std::numbers::pi / 2) return true;
  const double ang = std::acos(std::clamp(x.axis.dot(y.axis), -1.0, 1.0));
  const double slack = x.half_angle + y.half_angle + 1e-6;
  return std::abs(ang - 2.0 * std::numbers::pi / 3.0) <= slack;
}

class TripleSolver {
 public:
  TripleSolver(const Polyhedron3& poly, const std::vector<FaceInfo>& info, int samples)
      : poly_(poly), info_(info), samples_(samples), diam_(poly.diameter()) {}

  std::optional<TripodalTriple> solve(int i, int j, int k) const {
    const FaceInfo& f1 = info_[idx(i)];
    const FaceInfo& f2 = info_[idx(j)];
    const FaceInfo& f3 = info_[idx(k)];
    // x = (alpha1, alpha2, beta1, beta2); a = o1 + E1 alpha, b = o2 + E2 beta.
    Eigen::Matrix<double, 3, 4> basis;
    basis.setZero();
    Eigen::Matrix<double, 3, 4> bbasis;
    bbasis.setZero();
    basis.col(0) = f1.frame.e1;
    basis.col(1) = f1.frame.e2;
    bbasis.col(2) = f2.frame.e1;
    bbasis.col(3) = f2.frame.e2;
    Eigen::Vector4d coef;
    coef << f3.normal.dot(f1.frame.e1), f3.normal.dot(f1.frame.e2), f3.normal.dot(f2.frame.e1),
        f3.normal.dot(f2.frame.e2);
    const double rhs = -f3.offset - f3.normal.dot(f1.frame.origin + f2.frame.origin);
    int elim = 0;
    coef.cwiseAbs().maxCoeff(&elim);
    if (std::abs(coef(elim)) < 1e-9) return std::nullopt;
    std::vector<int> free_vars;
    for (int q = 0; q < 4; ++q) {
      if (q != elim) free_vars.push_back(q);
    }
    auto range_of = [&](int q) -> std::pair<double, double> {
      const FaceInfo& f = q < 2 ? f1 : f2;
      return {f.lo(q % 2), f.hi(q % 2)};
    };
    // Affine map from y = (sweep, z1, z2) to x.
    Eigen::Matrix<double, 4, 3> M = Eigen::Matrix<double, 4, 3>::Zero();
    Eigen::Vector4d x0 = Eigen::Vector4d::Zero();
    for (int col = 0; col < 3; ++col) M(free_vars[idx(col)], col) = 1.0;
    x0(elim) = rhs / coef(elim);
    for (int col = 0; col < 3; ++col) M(elim, col) = -coef(free_vars[idx(col)]) / coef(elim);
    const Eigen::Matrix3d A = basis * M;
    const Eigen::Matrix3d B = bbasis * M;
    const Vec3 a0 = f1.frame.origin + basis * x0;
    const Vec3 b0 = f2.frame.origin + bbasis * x0;

    const auto [s_lo, s_hi] = range_of(free_vars[0]);
    const auto [u_lo, u_hi] = range_of(free_vars[1]);
    const auto [w_lo, w_hi] = range_of(free_vars[2]);
    const double eps = 1e-9 * diam_;
    for (int sj = 0; sj < samples_; ++sj) {
      const double s = s_lo + (s_hi - s_lo) * (sj + 0.5) / samples_;
      const Vec3 as = a0 + A.col(0) * s;
      const Vec3 bs = b0 + B.col(0) * s;
      Eigen::Matrix<double, 3, 2> Az;
      Az << A.col(1), A.col(2);
      Eigen::Matrix<double, 3, 2> Bz;
      Bz << B.col(1), B.col(2);
      static constexpr double kStarts[4][2] = {{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75},
                                               {0.75, 0.75}};
      for (const auto& st : kStarts) {
        Eigen::Vector2d z(u_lo + st[0] * (u_hi - u_lo), w_lo + st[1] * (w_hi - w_lo));
        if (!newton(as, bs, Az, Bz, z)) continue;
        const Vec3 a = as + Az * z;
        const Vec3 b = bs + Bz * z;
        const Vec3 c = -a - b;
        if (a.norm() <= eps) continue;
        if (!inside(f1, a, eps) || !inside(f2, b, eps) || !inside(f3, c, eps)) continue;
        TripodalTriple tri = make_triple(poly_, a, b, c);
        if (verify_tripodal(poly_, tri, eps, eps).pass) return tri;
      }
    }
    return std::nullopt;
  }

 private:
  static bool newton(const Vec3& as, const Vec3& bs, const Eigen::Matrix<double, 3, 2>& Az,
                     const Eigen::Matrix<double, 3, 2>& Bz, Eigen::Vector2d& z) {
    auto residual = [&](const Eigen::Vector2d& zz) {
      const Vec3 a = as + Az * zz;
      const Vec3 b = bs + Bz * zz;
      return Eigen::Vector2d(a.squaredNorm() - b.squaredNorm(), -2.0 * a.dot(b) - b.squaredNorm());
    };
    Eigen::Vector2d F = residual(z);
    const double scale = std::max({as.squaredNorm(), bs.squaredNorm(), 1e-300});
    for (int it = 0; it < 40; ++it) {
      if (F.cwiseAbs().maxCoeff() <= 1e-15 * scale) return true;
      const Vec3 a = as + Az * z;
      const Vec3 b = bs + Bz * z;
      Eigen::Matrix2d J;
      J.row(0) = 2.0 * a.transpose() * Az - 2.0 * b.transpose() * Bz;
      J.row(1) = -2.0 * (b.transpose() * Az + a.transpose() * Bz) - 2.0 * b.transpose() * Bz;
      const double det = J.determinant();
      if (!std::isfinite(det) || std::abs(det) < 1e-300) return false;
      const Eigen::Vector2d step = -J.inverse() * F;
      double lambda = 1.0;
      bool moved = false;
      while (lambda > 1.0 / 256.0) {
        const Eigen::Vector2d nz = z + lambda * step;
        const Eigen::Vector2d nF = residual(nz);
        if (nF.norm() < F.norm()) {
          z = nz;
          F = nF;
          moved = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!moved) break;
    }
    return F.cwiseAbs().maxCoeff() <= 1e-12 * scale;
  }

  static bool inside(const FaceInfo& f, const Vec3& p, double eps) {
    if (std::abs(f.normal.dot(p) - f.offset) > eps) return false;
    return locate_point(*f.outline, f.frame.project(p), eps).side != Side::Outside;
  }

  const Polyhedron3& poly_;
  const std::vector<FaceInfo>& info_;
  int samples_;
  double diam_;
};

bool boxes_meet(const FaceInfo& f1, const FaceInfo& f2, const FaceInfo& f3, double eps) {
  // c = -(a + b) must reach face 3's box.
  const Vec3 lo = -(f1.box_hi + f2.box_hi);
  const Vec3 hi = -(f1.box_lo + f2.box_lo);
  for (int q = 0; q < 3; ++q) {
    if (hi(q) < f3.box_lo(q) - eps || lo(q) > f3.box_hi(q) + eps) return false;
  }
  return true;
}

}  // namespace

const char* to_string(Signature s) {
  switch (s) {
    case Signature::PlusPlus:
      return "++";
    case Signature::MinusMinus:
      return "--";
    case Signature::PlusMinus:
      return "+-";
    case Signature::MinusPlus:
      return "-+";
    case Signature::AllZero:
      return "00";
  }
  return "?";
}

std::pair<Point3, Point3> tripod_points(const Point3& gamma, const Eigen::Vector3d& v,
                                        double theta) {
  const double r = gamma.norm();
  if (!(r > 0.0)) fail(Errc::BadFrame, "gamma must be nonzero");
  const Vec3 ah = gamma / r;
  if (std::abs(v.norm() - 1.0) > 1e-9 || std::abs(v.dot(ah)) > 1e-9) {
    fail(Errc::BadFrame, "v must be a unit vector perpendicular to gamma");
  }
  const Vec3 u = std::cos(theta) * v + std::sin(theta) * ah.cross(v);
  const double k = std::sqrt(3.0) / 2.0 * r;
  return {-gamma / 2.0 + k * u, -gamma / 2.0 - k * u};
}

Signature signature(const Polyhedron3& poly, const Point3& b, const Point3& c, double eps) {
  const int f1 = side_sign(side3(poly, b, eps).side);
  const int f2 = side_sign(side3(poly, c, eps).side);
  if (f1 == 0 && f2 == 0) return Signature::AllZero;
  const int s1 = f1 != 0 ? f1 : f2;
  const int s2 = f2 != 0 ? f2 : f1;
  if (s1 > 0 && s2 > 0) return Signature::PlusPlus;
  if (s1 < 0 && s2 < 0) return Signature::MinusMinus;
  return s1 > 0 ? Signature::PlusMinus : Signature::MinusPlus;
}

TripodMap::TripodMap(const Polyhedron3& poly)
    : poly_(&poly),
      extremes_(extreme_boundary_points(poly, 1e-9 * poly.diameter())),
      path_(surface_path(poly, extremes_.nearest, extremes_.farthest)),
      field_(frame_field(path_)) {}

std::pair<Point3, Point3> TripodMap::companions(double t, double theta) const {
  const FrameField::Sample s = field_.eval(t);
  return tripod_points(s.q, s.v, theta);
}

Eigen::Vector2d TripodMap::g(double t, double theta) const {
  const auto [b, c] = companions(t, theta);
  return {signed_distance(*poly_, b), signed_distance(*poly_, c)};
}

TripodalResult tripodal_search(const Polyhedron3& poly, const TripodalSearchOptions& opts) {
  const double eps = 1e-9 * poly.diameter();
  const PointLocation3 origin = side3(poly, Point3::Zero(), eps);
  if (origin.side == Side::Outside) fail(Errc::OriginOutside);
  if (origin.side == Side::OnBoundary) {
    TripodalResult res;
    res.method = TripodalMethod::Degenerate;
    res.triple.at_a = res.triple.at_b = res.triple.at_c = origin.at;
    res.triple.degenerate = true;
    return res;
  }
  const TripodMap map(poly);
  for (int n = opts.n_t, m = opts.n_theta; n > 0; n *= 2, m *= 2) {
    if (auto r = scan_grid(map, opts, n, m)) return *r;
    if (n >= opts.max_grid) break;
  }
  if (opts.fallback_to_face_triples) {
    try {
      TripodalResult res;
      res.triple = tripodal_by_face_triples(poly, opts.samples_per_triple);
      res.method = TripodalMethod::FaceTriples;
      return res;
    } catch (const Error& e) {
      if (e.code() != Errc::NotFound) throw;
    }
  }
  fail(Errc::SearchExhausted);
}

TripodalTriple tripodal_by_face_triples(const Polyhedron3& poly, int samples_per_triple) {
  if (samples_per_triple < 1) fail(Errc::InvalidArgument, "samples_per_triple must be positive");
  const double eps = 1e-9 * poly.diameter();
  if (side3(poly, Point3::Zero(), eps).side != Side::Inside) {
    fail(Errc::OriginOutside, "face-triple search needs the origin strictly inside");
  }
  const std::vector<FaceInfo> info = describe_faces(poly);
  const TripleSolver solver(poly, info, samples_per_triple);
  const int nf = poly.num_faces();
  for (int i = 0; i < nf; ++i) {
    const FaceInfo& fi = info[idx(i)];
    for (int j = 0; j < nf; ++j) {
      const FaceInfo& fj = info[idx(j)];
      const double lo2 = std::max(fi.r_min, fj.r_min);
      const double hi2 = std::min(fi.r_max, fj.r_max);
      if (lo2 > hi2 + eps || !cones_compatible(fi, fj)) continue;
      for (int k = 0; k < nf; ++k) {
        const FaceInfo& fk = info[idx(k)];
        if (std::max(lo2, fk.r_min) > std::min(hi2, fk.r_max) + eps) continue;
        if (!cones_compatible(fi, fk) || !cones_compatible(fj, fk)) continue;
        if (!boxes_meet(fi, fj, fk, eps)) continue;
        if (auto tri = solver.solve(i, j, k)) return *tri;
      }
    }
  }
  fail(Errc::NotFound, "no face triple produced a verified tripodal triple");
}

TripodalCertificate verify_tripodal(const Polyhedron3& poly, const TripodalTriple& triple,
                                    double eps_geom, double eps_bal) {
  TripodalCertificate cert;
  const double na = triple.a.norm();
  const double nb = triple.b.norm();
  const double nc = triple.c.norm();
  cert.norm_spread = std::max(std::abs(na - nb), std::abs(nb - nc));
  cert.sum_residual = (triple.a + triple.b + triple.c).norm();
  for (const Point3* p : {&triple.a, &triple.b, &triple.c}) {
    cert.max_membership = std::max(cert.max_membership, nearest_surface_point(poly, *p).distance);
  }
  const double dab = (triple.a - triple.b).norm();
  const double dbc = (triple.b - triple.c).norm();
  const double dca = (triple.c - triple.a).norm();
  cert.side_spread = std::max({dab, dbc, dca}) - std::min({dab, dbc, dca});
  cert.eps_geom = eps_geom;
  cert.eps_bal = eps_bal;
  cert.pass = cert.norm_spread <= eps_geom && cert.sum_residual <= eps_bal &&
              cert.max_membership <= eps_geom && cert.side_spread <= 4.0 * (eps_geom + eps_bal);
  return cert;
}

}  // namespace wbal
