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

#ifndef WBAL_LP_HPP_
#define WBAL_LP_HPP_

#include <Eigen/Core>
#include <vector>

namespace wbal {

// minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq.
// Variables are free unless listed in `nonneg`. Empty matrices are fine as
// long as their column count matches c (or they have zero rows).
struct LinearProgram {
  Eigen::VectorXd c;
  Eigen::MatrixXd A_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  std::vector<int> nonneg;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

// Dense two-phase simplex with Bland's rule. Meant for the small programs in
// this library (tens of rows), not as a general solver.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace wbal

#endif  // WBAL_LP_HPP_
