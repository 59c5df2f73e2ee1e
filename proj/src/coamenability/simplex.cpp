// Copyright 2026 The Arbor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>

#include "arbor/coamenability.hpp"

namespace arbor {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : cols_(cols), a_(rows, std::vector<Rational>(cols + 1)), basis_(rows), obj_(cols + 1) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return a_.size(); }

  // Loads the objective and prices out the basic columns.
  void set_objective(const std::vector<Rational>& cost) {
    std::fill(obj_.begin(), obj_.end(), Rational(0));
    for (std::size_t c = 0; c < cost.size(); ++c) obj_[c] = cost[c];
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational k = obj_[basis_[r]];
      if (sgn(k) == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (sgn(a_[r][c]) != 0) obj_[c] -= k * a_[r][c];
      }
    }
  }

  Rational value() const { return -obj_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / a_[r][c];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k <= cols_; ++k) {
      if (sgn(a_[r][k]) != 0) {
        a_[r][k] *= inv;
        nz.push_back(k);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      const Rational k = row[c];
      for (std::size_t j : nz) row[j] -= k * a_[r][j];
    };
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i != r) eliminate(a_[i]);
    }
    eliminate(obj_);
    basis_[r] = c;
  }

  // Primal simplex over the columns allowed by `allowed`. Returns false when
  // unbounded.
  bool optimize(const std::vector<bool>& allowed, std::size_t& pivots) {
    std::size_t degenerate = 0;
    while (true) {
      // Dantzig's rule, falling back to Bland's rule after a run of
      // degenerate pivots.
      const bool bland = degenerate > 50;
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allowed[c] || sgn(obj_[c]) >= 0) continue;
        if (!enter || (!bland && obj_[c] < obj_[*enter])) enter = c;
        if (bland) break;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (sgn(a_[r][*enter]) <= 0) continue;
        Rational ratio = a_[r][cols_] / a_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      degenerate = sgn(best) == 0 ? degenerate + 1 : 0;
      pivot(*leave, *enter);
      ++pivots;
    }
  }

  std::vector<Rational> solution(std::size_t n) const {
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (basis_[r] < n) x[basis_[r]] = a_[r][cols_];
    }
    return x;
  }

  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> obj_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.senses.size() != m || lp.rhs.size() != m) {
    fail(ErrorCode::kInvalidArgument, "linear program has inconsistent row data");
  }

  // Columns: structural, then one slack or surplus per inequality, then
  // artificials.
  std::vector<std::optional<std::size_t>> slack(m);
  std::size_t cols = n;
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.senses[r] != RowSense::kEqual) slack[r] = cols++;
  }
  std::vector<bool> flip(m), needs_artificial(m);
  std::size_t artificial_count = 0;
  for (std::size_t r = 0; r < m; ++r) {
    flip[r] = sgn(lp.rhs[r]) < 0;
    const bool slack_is_basic = (lp.senses[r] == RowSense::kLessEqual && !flip[r]) ||
                                (lp.senses[r] == RowSense::kGreaterEqual && flip[r]);
    needs_artificial[r] = !slack_is_basic;
    artificial_count += needs_artificial[r];
  }
  const std::size_t first_artificial = cols;
  cols += artificial_count;

  Tableau t(m, cols);
  std::size_t next_artificial = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const int sign = flip[r] ? -1 : 1;
    for (const auto& [c, v] : lp.rows[r]) {
      if (c >= n) fail(ErrorCode::kInvalidArgument, "linear program column out of range");
      t.at(r, c) += sign * v;
    }
    if (slack[r]) t.at(r, *slack[r]) = sign * (lp.senses[r] == RowSense::kLessEqual ? 1 : -1);
    t.rhs(r) = sign * lp.rhs[r];
    if (needs_artificial[r]) {
      t.at(r, next_artificial) = 1;
      t.basic(r) = next_artificial++;
    } else {
      t.basic(r) = *slack[r];
    }
  }

  LpSolution out;
  std::vector<bool> allowed(cols, true);
  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t c = first_artificial; c < cols; ++c) phase1[c] = 1;
    t.set_objective(phase1);
    t.optimize(allowed, out.pivots);
    if (sgn(t.value()) != 0) {
      out.status = LpSolution::Status::kInfeasible;
      return out;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basic(r) < first_artificial) continue;
      for (std::size_t c = 0; c < first_artificial; ++c) {
        if (sgn(t.at(r, c)) != 0) {
          t.pivot(r, c);
          ++out.pivots;
          break;
        }
      }
    }
    for (std::size_t c = first_artificial; c < cols; ++c) allowed[c] = false;
  }

  std::vector<Rational> cost(cols);
  for (std::size_t c = 0; c < n; ++c) cost[c] = lp.objective[c];
  t.set_objective(cost);
  if (!t.optimize(allowed, out.pivots)) {
    out.status = LpSolution::Status::kUnbounded;
    return out;
  }
  out.status = LpSolution::Status::kOptimal;
  out.x = t.solution(n);
  out.value = 0;
  for (std::size_t c = 0; c < n; ++c) out.value += lp.objective[c] * out.x[c];
  return out;
}

}  // namespace arbor
