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

#pragma once

#include "arbor/coamenability.hpp"

namespace arbor::testing {

// Sum over m in [lo, hi) of 2^{-n m}; hi = 0 means no upper limit.
inline Rational geometric(std::size_t n, std::size_t lo, std::size_t hi) {
  Rational r = Rational(1) / Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(n));
  Rational total = 0;
  Rational term = 1;
  for (std::size_t k = 0; k < lo; ++k) term *= r;
  if (hi == 0) return term / (1 - r);
  for (std::size_t m = lo; m < hi; ++m) {
    total += term;
    term *= r;
  }
  return total;
}

// nu of (union over j of A_ij) minus A_{i,j}, by enumerating the levels m.
// Nonzero entries must exceed 1/4096.
inline Rational bad_mass_oracle(const DeviationTensor& t, std::size_t i, std::size_t j) {
  Rational total = 0;
  for (std::size_t g = 0; g < t.elements.size(); ++g) {
    for (std::size_t x = 0; x < t.mu.size(); ++x) {
      // (x, g, m) lies in A_ij iff d[i][j'][g][x] < 1/m for every j' >= j.
      auto in_a = [&](std::size_t from, std::size_t m) {
        for (std::size_t jj = from; jj < t.cols(); ++jj)
          if (t.values[i][jj][g][x] * m >= 1) return false;
        return true;
      };
      const std::size_t last = t.cols() - 1;
      // Levels of the union are an initial segment 1..M (or all m).
      std::size_t m = 1;
      while (m < 4096 && in_a(last, m)) {
        if (!in_a(j, m)) break;
        ++m;
      }
      if (m == 4096 || !in_a(last, m)) continue;
      // m is the first level in the union but outside A_ij; find the end of the union.
      std::size_t end = m;
      while (end < 4096 && in_a(last, end)) ++end;
      total += t.mu[x] * geometric(g + 1, m, end == 4096 ? 0 : end);
    }
  }
  return total;
}

}  // namespace arbor::testing
