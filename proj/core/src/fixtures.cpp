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

#include "wbal/fixtures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wbal/error.hpp"

namespace wbal::fixtures {
namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Portable uniform in [lo, hi): std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

// Box-Muller; same reason as above.
double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

VecX random_unit(std::mt19937_64& rng, int d) {
  VecX v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = gaussian(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

Point3 random_sphere_point(std::mt19937_64& rng, double r_lo, double r_hi) {
  return random_unit(rng, 3) * uniform(rng, r_lo, r_hi);
}

Polyhedron3 hull_mesh(const std::vector<Point3>& pts) {
  const int n = static_cast<int>(pts.size());
  Point3 c = Point3::Zero();
  for (const auto& p : pts) c += p;
  c /= n;
  double diam = 0.0;
  for (const auto& p : pts) diam = std::max(diam, (p - c).norm());
  const double eps = 1e-10 * diam;
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Eigen::Vector3d nrm = (pts[idx(j)] - pts[idx(i)]).cross(pts[idx(k)] - pts[idx(i)]);
        if (nrm.norm() <= eps * diam) continue;
        nrm.normalize();
        const double off = nrm.dot(pts[idx(i)]);
        bool above = false;
        bool below = false;
        for (int q = 0; q < n && !(above && below); ++q) {
          const double s = nrm.dot(pts[idx(q)]) - off;
          above |= s > eps;
          below |= s < -eps;
        }
        if (above && below) continue;
        if (above) {
          faces.push_back({i, k, j});
        } else {
          faces.push_back({i, j, k});
        }
      }
    }
  }
  std::vector<int> remap(idx(n), -1);
  std::vector<Point3> used;
  for (auto& f : faces) {
    for (int& v : f) {
      if (remap[idx(v)] < 0) {
        remap[idx(v)] = static_cast<int>(used.size());
        used.push_back(pts[idx(v)]);
      }
      v = remap[idx(v)];
    }
  }
  return validate_polyhedron(std::move(used), std::move(faces));
}

}  // namespace

Polygon2 square() { return validate_polygon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }

Polygon2 random_star_polygon(int n, std::uint64_t seed, double r_min, double r_max) {
  if (n < 3) fail(Errc::InvalidArgument, "need n >= 3");
  std::mt19937_64 rng(seed);
  // Jittered angles keep consecutive gaps below pi so the origin is inside.
  std::vector<Point2> pts;
  const double step = 2.0 * std::numbers::pi / n;
  // A gap is at most step * (1 + 2 j); keep it under 0.95 pi.
  const double j = std::min(0.4, (0.95 * n / 2.0 - 1.0) / 2.0);
  for (int i = 0; i < n; ++i) {
    const double a = step * (i + uniform(rng, 0.5 - j, 0.5 + j));
    const double r = uniform(rng, r_min, r_max);
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return validate_polygon(std::move(pts));
}

WeightSet random_feasible_weights(int k, std::uint64_t seed) {
  if (k < 2) fail(Errc::InvalidArgument, "need k >= 2");
  std::mt19937_64 rng(seed);
  std::vector<double> w(idx(k));
  for (auto& x : w) x = uniform(rng, 0.1, 10.0);
  auto top = std::max_element(w.begin(), w.end());
  double rest = 0.0;
  for (auto it = w.begin(); it != w.end(); ++it) {
    if (it != top) rest += *it;
  }
  if (*top > rest) {
    // Clip to the boundary case, nudged down if summation order disagrees.
    *top = rest;
    while (!feasibility(WeightSet(w))) *top = std::nextafter(*top, 0.0);
  }
  return WeightSet(std::move(w));
}

Polyhedron3 cube() {
  std::vector<Point3> v;
  for (int i = 0; i < 8; ++i) {
    v.emplace_back(i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0);
  }
  return validate_polyhedron(std::move(v), {{0, 2, 3, 1},
                                            {4, 5, 7, 6},
                                            {0, 1, 5, 4},
                                            {2, 6, 7, 3},
                                            {0, 4, 6, 2},
                                            {1, 3, 7, 5}});
}

Polyhedron3 octahedron() {
  std::vector<Point3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  return validate_polyhedron(std::move(v), {{0, 2, 4},
                                            {2, 1, 4},
                                            {1, 3, 4},
                                            {3, 0, 4},
                                            {2, 0, 5},
                                            {1, 2, 5},
                                            {3, 1, 5},
                                            {0, 3, 5}});
}

Polyhedron3 simplex() {
  std::vector<Point3> v = {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {-1, -1, -1}};
  return validate_polyhedron(std::move(v), {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}});
}

Polyhedron3 random_convex_mesh(int n, std::uint64_t seed) {
  if (n < 4 || n > 50) fail(Errc::InvalidArgument, "need 4 <= n <= 50");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<Point3> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_sphere_point(rng, 0.7, 1.3));
    Polyhedron3 mesh = hull_mesh(pts);
    if (side3(mesh, Point3::Zero(), 1e-6).side == Side::Inside) return mesh;
  }
}

Polyhedron3 star_mesh(int rings, int sectors, std::uint64_t seed, double r_min, double r_max) {
  if (rings < 1 || sectors < 3) fail(Errc::InvalidArgument, "need rings >= 1, sectors >= 3");
  std::mt19937_64 rng(seed);
  std::vector<Point3> v;
  auto at = [&](double theta, double phi) {
    const double r = uniform(rng, r_min, r_max);
    return Point3(r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                  r * std::cos(theta));
  };
  v.push_back(at(0.0, 0.0));
  for (int i = 1; i <= rings; ++i) {
    for (int j = 0; j < sectors; ++j) {
      v.push_back(at(std::numbers::pi * i / (rings + 1), 2.0 * std::numbers::pi * j / sectors));
    }
  }
  v.push_back(at(std::numbers::pi, 0.0));
  const int south = static_cast<int>(v.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * sectors + (j % sectors); };
  std::vector<std::vector<int>> faces;
  for (int j = 0; j < sectors; ++j) {
    faces.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i < rings; ++i) {
      faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
    faces.push_back({ring(rings, j), south, ring(rings, j + 1)});
  }
  return validate_polyhedron(std::move(v), std::move(faces));
}

HPolytope hrep_of_mesh(const Polyhedron3& poly) {
  const int m = poly.num_faces();
  MatX a(m, 3);
  VecX b(m);
  for (int f = 0; f < m; ++f) {
    a.row(f) = poly.face_normal(f).transpose();
    b(f) = poly.face_offset(f);
  }
  return HPolytope(std::move(a), std::move(b));
}

HPolytope hypercube(int d) {
  if (d < 1) fail(Errc::InvalidArgument, "need d >= 1");
  MatX a(2 * d, d);
  a << MatX::Identity(d, d), -MatX::Identity(d, d);
  return HPolytope(std::move(a), VecX::Ones(2 * d));
}

HPolytope random_hpolytope(int d, int m, std::uint64_t seed) {
  if (d < 1 || m < d + 1) fail(Errc::InvalidArgument, "need m >= d + 1");
  std::mt19937_64 rng(seed);
  // Regular simplex normals: rows of an orthonormal basis of 1^perp in R^{d+1}.
  const MatX center = MatX::Identity(d + 1, d + 1) - MatX::Constant(d + 1, d + 1, 1.0 / (d + 1));
  const Eigen::JacobiSVD<MatX> svd(center, Eigen::ComputeFullU);
  const MatX u = svd.matrixU().leftCols(d);
  for (;;) {
    MatX g(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = gaussian(rng);
    }
    const MatX rot = Eigen::HouseholderQR<MatX>(g).householderQ();
    MatX a(m, d);
    VecX b(m);
    for (int i = 0; i <= d; ++i) {
      VecX n = rot * u.row(i).transpose().normalized();
      for (int j = 0; j < d; ++j) n(j) += 0.05 / std::sqrt(d) * gaussian(rng);
      a.row(i) = n.normalized().transpose();
    }
    for (int i = d + 1; i < m; ++i) a.row(i) = random_unit(rng, d).transpose();
    for (int i = 0; i < m; ++i) b(i) = uniform(rng, 0.5, 1.5);
    HPolytope h(std::move(a), std::move(b));
    try {
      return validate_hrep(h);
    } catch (const Error&) {
      // Resample; the jitter is small enough that this is rare.
    }
  }
}

HPolytope random_3polytope(int n, std::uint64_t seed) {
  if (n < 4) fail(Errc::InvalidArgument, "need n >= 4");
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<VecX> pts;
    for (int i = 0; i < n; ++i) pts.emplace_back(random_sphere_point(rng, 0.7, 1.3));
    HPolytope h = hull_of_points(pts);
    if (h.origin_interior() && h.offsets().minCoeff() > 0.05) return h;
  }
}

}  // namespace wbal::fixtures
