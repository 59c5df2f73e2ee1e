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

#include "arbor/coamenability.hpp"

namespace arbor {

void DeviationTensor::validate() const {
  if (mu.empty()) fail(ErrorCode::kInvalidArgument, "tensor has no points");
  if (elements.empty()) fail(ErrorCode::kInvalidArgument, "tensor has no group elements");
  Rational total = 0;
  for (const auto& w : mu) {
    if (sgn(w) < 0) fail(ErrorCode::kInvalidArgument, "negative point weight");
    total += w;
  }
  if (total != 1) fail(ErrorCode::kInvalidArgument, "point weights sum to " + to_string(total));
  if (values.empty() || values[0].empty()) fail(ErrorCode::kInvalidArgument, "empty tensor");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != cols()) fail(ErrorCode::kInvalidArgument, "ragged tensor at i=" + std::to_string(i));
    for (std::size_t j = 0; j < values[i].size(); ++j) {
      if (values[i][j].size() != elements.size()) {
        fail(ErrorCode::kInvalidArgument, "tensor entry [" + std::to_string(i) + "][" + std::to_string(j) +
                                              "] has the wrong number of group elements");
      }
      for (const auto& by_x : values[i][j]) {
        if (by_x.size() != mu.size()) {
          fail(ErrorCode::kInvalidArgument, "tensor entry [" + std::to_string(i) + "][" +
                                                std::to_string(j) + "] has the wrong number of points");
        }
        for (const auto& d : by_x) {
          if (sgn(d) < 0 || d > 2) fail(ErrorCode::kInvalidArgument, "tensor value outside [0, 2]");
        }
      }
    }
  }
}

namespace {

Rational pow2(std::size_t k) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, k);
  return Rational(z);
}

// Sum over m >= 1 with d < 1/m of 2^{-nm}.
Rational tail_weight(std::size_t n, const Rational& d) {
  const Rational base = pow2(n) - 1;
  if (sgn(d) == 0) return 1 / base;
  mpz_class ceil_inv;
  mpz_cdiv_q(ceil_inv.get_mpz_t(), d.get_den_mpz_t(), d.get_num_mpz_t());
  const mpz_class m = ceil_inv - 1;
  if (m <= 0) return 0;
  return (1 - 1 / pow2(n * m.get_ui())) / base;
}

}  // namespace

Rational cfw_mass(const DeviationTensor& t, std::size_t i, std::size_t j) {
  Rational total = 0;
  for (std::size_t g = 0; g < t.elements.size(); ++g) {
    for (std::size_t x = 0; x < t.mu.size(); ++x) {
      if (sgn(t.mu[x]) == 0) continue;
      Rational worst = 0;
      for (std::size_t jj = j; jj < t.cols(); ++jj) {
        if (t.values[i][jj][g][x] > worst) worst = t.values[i][jj][g][x];
      }
      total += t.mu[x] * tail_weight(g + 1, worst);
    }
  }
  return total;
}

CfwResult cfw_extract(const DeviationTensor& t) {
  t.validate();
  CfwResult out;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    // A_ij grows with j, so the union is the last one.
    const Rational whole = cfw_mass(t, i, t.cols() - 1);
    const Rational threshold = 1 / pow2(i);
    std::optional<std::size_t> f;
    Rational bad;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      bad = whole - cfw_mass(t, i, j);
      if (bad < threshold) {
        f = j;
        break;
      }
    }
    if (!f) fail(ErrorCode::kInternal, "no index satisfies the mass bound at i=" + std::to_string(i));
    out.f.push_back(*f);
    out.union_mass.push_back(whole);
    out.bad_mass.push_back(bad);
  }
  return out;
}

DeviationTensor shift_tensor(const FiniteGSet& x_set, const std::vector<ProbVector<Elem>>& p,
                             std::span<const std::size_t> shift, std::span<const Elem> elements,
                             std::size_t cols, std::vector<Rational> mu) {
  if (shift.size() != x_set.size() || mu.size() != x_set.size()) {
    fail(ErrorCode::kInvalidArgument, "shift map and weights need one entry per point");
  }
  auto act = [&](Elem a, std::size_t y) -> std::optional<std::size_t> { return x_set.act(a, y); };
  DeviationTensor t;
  for (Elem a : elements) t.elements.push_back(x_set.group().name(a));
  t.mu = std::move(mu);
  for (const auto& pi : p) {
    std::vector<std::vector<std::vector<Rational>>> row;
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<std::vector<Rational>> by_g;
      for (Elem a : elements) {
        std::vector<Rational> by_x;
        for (std::size_t x = 0; x < x_set.size(); ++x) {
          std::size_t y = x;
          for (std::size_t k = 0; k < j; ++k) y = shift[y];
          by_x.push_back(l1_distance(pushforward(pi, y, act), pushforward(pi, x_set.act(a, y), act)));
        }
        by_g.push_back(std::move(by_x));
      }
      row.push_back(std::move(by_g));
    }
    t.values.push_back(std::move(row));
  }
  t.validate();
  return t;
}

}  // namespace arbor
