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

#include "wbal/lp.hpp"

#include <cmath>
#include <limits>

#include "wbal/error.hpp"

namespace wbal {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis, int cols_allowed)
      : t_(std::move(t)), basis_(std::move(basis)), allowed_(cols_allowed) {}

  Eigen::MatrixXd& t() { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs() const { return static_cast<int>(t_.cols()) - 1; }
  void set_allowed(int n) { allowed_ = n; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Runs Bland's rule on the cost row (last row). Returns false on
  // unboundedness.
  bool optimize() {
    const int m = rows();
    for (int guard = 0; guard < 100000; ++guard) {
      int enter = -1;
      for (int j = 0; j < allowed_; ++j) {
        if (t_(m, j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, rhs()) / a;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    fail(Errc::Degenerate, "simplex iteration limit");
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int allowed_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.c.size());
  const int mu = static_cast<int>(lp.A_ub.rows());
  const int me = static_cast<int>(lp.A_eq.rows());
  if ((mu > 0 && lp.A_ub.cols() != n) || (me > 0 && lp.A_eq.cols() != n) ||
      lp.b_ub.size() != mu || lp.b_eq.size() != me) {
    fail(Errc::InvalidArgument, "linear program dimensions disagree");
  }
  std::vector<bool> is_nonneg(static_cast<std::size_t>(n), false);
  for (int j : lp.nonneg) {
    if (j < 0 || j >= n) fail(Errc::IndexOutOfRange, "nonneg index");
    is_nonneg[static_cast<std::size_t>(j)] = true;
  }
  // Column layout: one column per nonneg variable, two per free variable
  // (x = x+ - x-), then one slack per inequality, then one artificial per row.
  std::vector<int> plus(static_cast<std::size_t>(n));
  std::vector<int> minus(static_cast<std::size_t>(n), -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    plus[static_cast<std::size_t>(j)] = cols++;
    if (!is_nonneg[static_cast<std::size_t>(j)]) minus[static_cast<std::size_t>(j)] = cols++;
  }
  const int slack0 = cols;
  cols += mu;
  const int art0 = cols;
  const int m = mu + me;
  cols += m;

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols + 1);
  auto load_row = [&](int r, const Eigen::RowVectorXd& a, double b, int slack) {
    double scale = std::max(a.cwiseAbs().maxCoeff(), std::abs(b));
    if (!(scale > 0.0)) scale = 1.0;
    const double sign = b < 0.0 ? -1.0 : 1.0;
    const double f = sign / scale;
    for (int j = 0; j < n; ++j) {
      t(r, plus[static_cast<std::size_t>(j)]) = f * a(j);
      if (minus[static_cast<std::size_t>(j)] >= 0) {
        t(r, minus[static_cast<std::size_t>(j)]) = -f * a(j);
      }
    }
    if (slack >= 0) t(r, slack) = f;
    t(r, art0 + r) = 1.0;
    t(r, cols) = f * b;
  };
  for (int i = 0; i < mu; ++i) load_row(i, lp.A_ub.row(i), lp.b_ub(i), slack0 + i);
  for (int i = 0; i < me; ++i) load_row(mu + i, lp.A_eq.row(i), lp.b_eq(i), -1);

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = art0 + i;

  // Phase one: minimize the sum of artificials.
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, art0 + i) = 0.0;
  Tableau tab(std::move(t), std::move(basis), art0);
  tab.optimize();
  LpResult result;
  if (-tab.t()(m, cols) > 1e-9) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Push remaining (zero-valued) artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < art0) continue;
    int best = -1;
    for (int j = 0; j < art0; ++j) {
      if (std::abs(tab.t()(i, j)) > 1e-9 &&
          (best < 0 || std::abs(tab.t()(i, j)) > std::abs(tab.t()(i, best)))) {
        best = j;
      }
    }
    if (best >= 0) tab.pivot(i, best);
  }

  // Phase two cost row: reduced costs of the original objective.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost(plus[static_cast<std::size_t>(j)]) = lp.c(j);
    if (minus[static_cast<std::size_t>(j)] >= 0) cost(minus[static_cast<std::size_t>(j)]) = -lp.c(j);
  }
  Eigen::MatrixXd& tt = tab.t();
  tt.row(m).setZero();
  tt.row(m).head(cols) = cost.transpose();
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis()[static_cast<std::size_t>(i)];
    const double cb = b < cols ? cost(b) : 0.0;
    if (cb != 0.0) tt.row(m) -= cb * tt.row(i);
  }
  tab.set_allowed(art0);
  if (!tab.optimize()) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < m; ++i) y(tab.basis()[static_cast<std::size_t>(i)]) = tab.t()(i, cols);
  result.x.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = y(plus[static_cast<std::size_t>(j)]);
    if (minus[static_cast<std::size_t>(j)] >= 0) v -= y(minus[static_cast<std::size_t>(j)]);
    result.x(j) = v;
  }
  result.status = LpStatus::Optimal;
  result.value = lp.c.dot(result.x);
  return result;
}

}  // namespace wbal
