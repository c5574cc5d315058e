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

#ifndef WBAL_GEOM2D_HPP_
#define WBAL_GEOM2D_HPP_

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wbal {

using Point2 = Eigen::Vector2d;

inline double cross2(const Point2& a, const Point2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// A point on a polygon boundary, addressed as a fraction `s` along the
/// directed edge `edge` (from vertex edge to vertex edge+1 mod n).
struct BoundaryPoint2 {
  int edge = 0;
  double s = 0.0;

  friend bool operator==(const BoundaryPoint2&, const BoundaryPoint2&) = default;
};

/// Simple polygon, counterclockwise. Only constructible via validate_polygon
/// (or translation of an already valid polygon), so every instance satisfies
/// the simplicity and orientation invariants.
class Polygon2 {
 public:
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const Point2& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Point2& edge_start(int i) const { return vertex(i); }
  const Point2& edge_end(int i) const { return vertex((i + 1) % size()); }

  /// Diagonal of the axis-aligned bounding box.
  double diameter() const { return diameter_; }
  double signed_area() const;

  Polygon2 translated(const Point2& offset) const;

 private:
  friend Polygon2 validate_polygon(std::vector<Point2> raw);
  explicit Polygon2(std::vector<Point2> vertices);

  std::vector<Point2> vertices_;
  double diameter_ = 0.0;
};

/// Closed polyline that may self-intersect; segment j joins vertex j to
/// vertex j+1 mod n. provenance[j] names the polygon edge it was mapped from.
struct ClosedPolyline2 {
  std::vector<Point2> vertices;
  std::vector<int> provenance;

  int segments() const { return static_cast<int>(vertices.size()); }
  Point2 eval(int segment, double s) const;
};

enum class Side { Inside, Outside, OnBoundary };

struct PointLocation2 {
  Side side = Side::Outside;
  BoundaryPoint2 at;  // nearest boundary parameter, meaningful for OnBoundary
  double distance = 0.0;
};

struct NearestBoundary {
  BoundaryPoint2 at;
  double distance = 0.0;
};

/// One intersection of a closed polyline with a polygon boundary.
struct CurveHit {
  int segment = 0;         // segment of the polyline
  double s = 0.0;          // fraction along that segment
  BoundaryPoint2 on_polygon;
  Point2 point;            // the intersection, evaluated on the polygon
};

struct AntipodalPair {
  BoundaryPoint2 first;
  BoundaryPoint2 second;
};

/// Absolute tolerances: `geom` bounds boundary-membership error, `bal` bounds
/// weighted-sum residuals.
struct Tolerances {
  double geom = 0.0;
  double bal = 0.0;

  /// eps_geom = 1e-9 * diam, eps_bal = 1e-8 * diam * (weight_sum or 1).
  static Tolerances for_scale(double diameter, double weight_sum = 1.0);
};

Polygon2 validate_polygon(std::vector<Point2> raw);

Point2 eval_boundary(const Polygon2& poly, const BoundaryPoint2& bp);

/// Minimum over all edges; ties resolved towards the smaller (edge, s).
NearestBoundary nearest_boundary_point(const Polygon2& poly, const Point2& p);

PointLocation2 locate_point(const Polygon2& poly, const Point2& p, double eps);

/// Image of the boundary under x -> scale * x + offset.
ClosedPolyline2 affine_boundary_image(const Polygon2& poly, double scale,
                                      const Point2& offset);

/// All crossings and touchings within eps, sorted by (segment, s). A segment
/// overlapping a polygon edge contributes the two ends of the overlap only.
std::vector<CurveHit> curve_polygon_intersections(const ClosedPolyline2& curve,
                                                  const Polygon2& poly,
                                                  double eps);

/// Two boundary points with midpoint `center`.
AntipodalPair antipodal_about(const Polygon2& poly, const Point2& center);
AntipodalPair antipodal_about(const Polygon2& poly, const Point2& center,
                              const Tolerances& tol);

/// Result of sliding a point counterclockwise along the boundary from a start
/// parameter while a companion follows x -> scale * x + offset.
struct MigrationHit {
  BoundaryPoint2 mover;     // where the sliding point stops
  BoundaryPoint2 follower;  // the companion, now on the boundary
  double travel = 0.0;      // edges traversed (fractional), 0 = no movement
};

/// First parameter (smallest counterclockwise travel, zero included) at which
/// the companion touches the boundary. Empty when the image curve never meets
/// the boundary within eps.
std::optional<MigrationHit> first_companion_hit(const Polygon2& poly,
                                                const BoundaryPoint2& start,
                                                double scale,
                                                const Point2& offset,
                                                double eps);

// Text format: one "x y" pair per line, '#' starts a comment.
std::vector<Point2> parse_polygon_text(std::string_view text);
std::string format_polygon_text(const Polygon2& poly);

}  // namespace wbal

#endif  // WBAL_GEOM2D_HPP_
