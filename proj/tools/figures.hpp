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

// Static SVG and OBJ artifacts. Output text depends only on the inputs.

#ifndef WBAL_TOOLS_FIGURES_HPP_
#define WBAL_TOOLS_FIGURES_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbal/balance2d.hpp"
#include "wbal/geom2d.hpp"
#include "wbal/geom3d.hpp"
#include "wbal/tripodal.hpp"

namespace wbal::figures {

struct WeightMark {
  Point2 at;
  double weight = 1.0;
  std::string label;
};

/// Boundary, optional migration image curves, target cross and weight
/// discs with area proportional to weight.
std::string polygon_svg(const Polygon2& poly, const std::vector<WeightMark>& marks,
                        const Point2& target, const std::vector<MigrationRound>& trace);

/// Signature of the tripod map over an n_t x n_theta grid; marks (t, theta)
/// when given.
std::string signature_svg(const TripodMap& map, int n_t, int n_theta, double eps,
                          std::optional<std::pair<double, double>> marker);

class ObjWriter {
 public:
  void group(const std::string& name);
  /// Appends vertices and faces (0-based ids into `vertices`).
  void mesh(const std::vector<Point3>& vertices, const std::vector<std::vector<int>>& faces);
  void polygon(const std::vector<Point3>& corners);
  void points(const std::vector<Point3>& pts);
  void segment(const Point3& a, const Point3& b);
  const std::string& str() const { return text_; }

 private:
  int vertex(const Point3& p);

  std::string text_ = "# wbal overlay\n";
  int count_ = 0;
};

}  // namespace wbal::figures

#endif  // WBAL_TOOLS_FIGURES_HPP_
