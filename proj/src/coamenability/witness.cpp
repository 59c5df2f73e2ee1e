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
#include <numeric>

#include "arbor/coamenability.hpp"

namespace arbor {

FiniteGSet FiniteGSet::make(const FiniteGroup& g, std::vector<std::vector<std::size_t>> action) {
  if (action.size() != g.order()) fail(ErrorCode::kInvalidArgument, "action table needs one row per element");
  const std::size_t n = action[0].size();
  for (const auto& row : action) {
    if (row.size() != n) fail(ErrorCode::kInvalidArgument, "ragged action table");
    for (std::size_t y : row) {
      if (y >= n) fail(ErrorCode::kInvalidArgument, "action image out of range");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (action[0][x] != x) fail(ErrorCode::kInvalidArgument, "the identity must act trivially");
    for (Elem a = 0; a < g.order(); ++a) {
      for (Elem b = 0; b < g.order(); ++b) {
        if (action[g.mul(a, b)][x] != action[a][action[b][x]]) {
          fail(ErrorCode::kInvalidArgument, "action table is not a left action");
        }
      }
    }
  }
  FiniteGSet out;
  out.g_ = g;
  out.n_ = n;
  out.action_ = std::move(action);
  return out;
}

FiniteGSet FiniteGSet::cosets(const FiniteGroup& g, const std::vector<ElementSet>& subgroups) {
  std::vector<std::vector<std::size_t>> action(g.order());
  std::size_t offset = 0;
  for (const auto& h : subgroups) {
    const CosetPartition part = left_cosets(g, h);
    for (Elem a = 0; a < g.order(); ++a) {
      for (Elem rep : part.transversal.reps) action[a].push_back(offset + part.coset_of[g.mul(a, rep)]);
    }
    offset += part.transversal.reps.size();
  }
  return make(g, std::move(action));
}

ElementSet FiniteGSet::stabilizer(std::size_t x) const {
  ElementSet out;
  for (Elem a = 0; a < g_.order(); ++a) {
    if (action_[a][x] == x) out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> FiniteGSet::orbit(std::size_t x) const {
  std::vector<std::size_t> out;
  for (Elem a = 0; a < g_.order(); ++a) out.push_back(action_[a][x]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<ProbVector<Elem>> enumerate_measures(
    std::size_t n, std::size_t max_denominator,
    const std::function<bool(const ProbVector<Elem>&)>& visit) {
  for (std::size_t d = 1; d <= max_denominator; ++d) {
    std::vector<Rational> values;
    for (unsigned long b = 1; b <= d; ++b) {
      for (unsigned long a = 1; a <= b; ++a) {
        if (std::gcd(a, b) == 1) values.emplace_back(a, b);
      }
    }
    std::sort(values.begin(), values.end());
    auto denominator_ok = [&](const Rational& w) { return w.get_den() <= d; };

    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<Elem> support(k);
      std::iota(support.begin(), support.end(), 0);
      std::vector<Rational> weights(k);
      std::optional<ProbVector<Elem>> found;

      // Weights in lexicographic order; the last one is forced.
      std::function<bool(std::size_t, const Rational&, bool)> fill =
          [&](std::size_t pos, const Rational& remaining, bool hit) -> bool {
        if (pos + 1 == k) {
          if (sgn(remaining) <= 0 || !denominator_ok(remaining)) return false;
          if (!hit && remaining.get_den() != d) return false;
          weights[pos] = remaining;
          std::map<Elem, Rational> w;
          for (std::size_t q = 0; q < k; ++q) w.emplace(support[q], weights[q]);
          auto p = ProbVector<Elem>::make(std::move(w));
          if (visit(p)) {
            found = std::move(p);
            return true;
          }
          return false;
        }
        for (const Rational& v : values) {
          if (v >= remaining) break;
          weights[pos] = v;
          if (fill(pos + 1, remaining - v, hit || v.get_den() == d)) return true;
        }
        return false;
      };

      while (true) {
        if (fill(0, Rational(1), false)) return found;
        // Next k-subset in lexicographic order.
        std::size_t pos = k;
        while (pos > 0 && support[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++support[pos - 1];
        for (std::size_t q = pos; q < k; ++q) support[q] = support[q - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

Rational orbit_deviation(const FiniteGSet& x_set, const ProbVector<Elem>& p,
                         std::span<const Elem> generators, std::size_t x) {
  std::vector<std::string> names;
  for (Elem s : generators) names.push_back(x_set.group().name(s));
  auto act = [&](Elem g, std::size_t y) -> std::optional<std::size_t> { return x_set.act(g, y); };
  Rational worst = 0;
  for (std::size_t y : x_set.orbit(x)) {
    const Deviation d = reiter_deviation(p, generators, names, act, y);
    if (d.max > worst) worst = d.max;
  }
  return worst;
}

WitnessSequence amenability_witness_sequence(
    const FiniteGSet& x_set, const std::vector<std::vector<Elem>>& s_chain, std::size_t n_max,
    std::size_t max_denominator, std::span<const std::pair<std::size_t, Elem>> pairs) {
  if (s_chain.empty()) fail(ErrorCode::kInvalidArgument, "empty generator chain");
  for (std::size_t k = 1; k < s_chain.size(); ++k) {
    for (Elem s : s_chain[k - 1]) {
      if (std::find(s_chain[k].begin(), s_chain[k].end(), s) == s_chain[k].end()) {
        fail(ErrorCode::kInvalidArgument, "generator chain is not increasing");
      }
    }
  }
  auto s_at = [&](std::size_t n) -> const std::vector<Elem>& {
    return s_chain[std::min(n, s_chain.size()) - 1];
  };
  const FiniteGroup& g = x_set.group();

  WitnessSequence out;
  out.p.resize(x_set.size());
  out.q.resize(x_set.size());
  // p_n^x depends only on the orbit of x.
  std::map<std::pair<std::size_t, std::size_t>, ProbVector<Elem>> cache;
  for (std::size_t x = 0; x < x_set.size(); ++x) {
    const std::size_t orbit_key = x_set.orbit(x).front();
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto it = cache.find({orbit_key, n});
      if (it == cache.end()) {
        const Rational bound(1, static_cast<unsigned long>(n));
        auto p = enumerate_measures(g.order(), max_denominator, [&](const ProbVector<Elem>& cand) {
          return orbit_deviation(x_set, cand, s_at(n), x) < bound;
        });
        if (!p) {
          fail(ErrorCode::kHypothesis, "no (S_" + std::to_string(n) + ", 1/" + std::to_string(n) +
                                           ")-Reiter function with denominators up to " +
                                           std::to_string(max_denominator) + " for point " +
                                           std::to_string(x));
        }
        it = cache.emplace(std::make_pair(orbit_key, n), std::move(*p)).first;
      }
      out.p[x].push_back(it->second);
      out.q[x].push_back(pushforward(it->second, x, [&](Elem a, std::size_t y) -> std::optional<std::size_t> {
        return x_set.act(a, y);
      }));
    }
  }
  for (const auto& [x, a] : pairs) {
    if (x >= x_set.size() || a >= g.order()) fail(ErrorCode::kInvalidArgument, "decay pair out of range");
    DecayRow row;
    row.x = x;
    row.g = a;
    const std::size_t gx = x_set.act(a, x);
    for (std::size_t n = 1; n <= n_max; ++n) {
      row.deviation.push_back(l1_distance(out.q[x][n - 1], out.q[gx][n - 1]));
      const auto& s = s_at(n);
      row.g_in_s.push_back(std::find(s.begin(), s.end(), a) != s.end());
    }
    out.decay.push_back(std::move(row));
  }
  return out;
}

}  // namespace arbor
