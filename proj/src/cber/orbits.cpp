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
#include <set>

#include "arbor/cber.hpp"
#include "arbor/error.hpp"

namespace arbor {

std::optional<std::pair<std::size_t, std::size_t>> tail_equivalent(const LetterSequence& x,
                                                                   const LetterSequence& y,
                                                                   std::size_t factor) {
  const std::size_t bx = factor * (x.prefix().size() + x.cycle().size());
  const std::size_t by = factor * (y.prefix().size() + y.cycle().size());
  std::vector<LetterSequence> xs, ys;
  for (std::size_t i = 0; i <= bx; ++i) xs.push_back(x.shifted(i));
  for (std::size_t j = 0; j <= by; ++j) ys.push_back(y.shifted(j));
  for (std::size_t s = 0; s <= bx + by; ++s) {
    const std::size_t lo = s > by ? s - by : 0;
    for (std::size_t i = lo; i <= std::min(s, bx); ++i) {
      if (xs[i] == ys[s - i]) return std::make_pair(i, s - i);
    }
  }
  return std::nullopt;
}

OrbitRepresentative orbit_representative(const Amalgam& am, const LetterSequence& x) {
  const Side root = x.start_side();
  std::optional<OrbitRepresentative> best;
  for (Elem h = 0; h < am.group(root).order(); ++h) {
    LetterSequence image = act_on_sequence(am, from_element(am, TaggedElement{root, h}), x);
    if (!best || image < best->code) best = OrbitRepresentative{std::move(image), TaggedElement{root, h}};
  }
  return *best;
}

BoundaryCode canonical_orbit_code(const Amalgam& am, const BoundaryCode& x) {
  return BoundaryCode::from_sequence(orbit_representative(am, x.sequence()).code);
}

std::vector<OrbitRepresentative> tail_invariants(const Amalgam& am, const BoundaryCode& x) {
  const std::size_t n = x.prefix().size() + x.cycle().size();
  std::vector<OrbitRepresentative> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(orbit_representative(am, x.sequence().shifted(i)));
  return out;
}

ReducedWord initial_word(const Amalgam& am, const BoundaryCode& x, std::size_t i) {
  std::vector<TaggedElement> word;
  word.reserve(i);
  for (std::size_t k = 0; k < i; ++k) {
    const Letter l = x.at(k);
    word.push_back(TaggedElement{l.side, am.rep_element(l)});
  }
  return normal_form(am, word);
}

OrbitDecision orbit_equivalent(const Amalgam& am, const BoundaryCode& x, const BoundaryCode& y) {
  const auto tx = tail_invariants(am, x);
  const auto ty = tail_invariants(am, y);
  OrbitDecision out;
  for (std::size_t s = 0; s + 2 <= tx.size() + ty.size(); ++s) {
    const std::size_t lo = s >= ty.size() ? s - ty.size() + 1 : 0;
    for (std::size_t i = lo; i <= std::min(s, tx.size() - 1); ++i) {
      const std::size_t j = s - i;
      if (tx[i].code != ty[j].code) continue;
      const ReducedWord hx_inv = invert(am, from_element(am, tx[i].h));
      const ReducedWord hy = from_element(am, ty[j].h);
      ReducedWord g = multiply(am, initial_word(am, x, i), hx_inv);
      g = multiply(am, g, hy);
      g = multiply(am, g, invert(am, initial_word(am, y, j)));
      if (act_on_boundary(am, g, y) != x) {
        fail(ErrorCode::kVerification, "orbit witness " + to_string(am, g) + " does not map " +
                                           to_string(am, y) + " to " + to_string(am, x));
      }
      out.equivalent = true;
      out.i = i;
      out.j = j;
      out.witness = std::move(g);
      return out;
    }
  }
  return out;
}

std::optional<ReducedWord> orbit_equivalent_bruteforce(const Amalgam& am, const BoundaryCode& x,
                                                       const BoundaryCode& y,
                                                       std::size_t word_bound) {
  for (auto& g : enumerate_words(am, word_bound)) {
    if (act_on_boundary(am, g, y) == x) return std::move(g);
  }
  return std::nullopt;
}

SampleSpace make_sample_space(const Amalgam& am, std::size_t p_max, std::size_t q_max) {
  std::set<BoundaryCode> found;
  for (std::size_t p = 0; p <= p_max; ++p) {
    for (std::size_t q = 2; q <= q_max; q += 2) {
      const std::size_t len = p + q;
      auto lowest = [&](std::size_t pos) -> std::uint32_t { return pos == 0 && p > 0 ? 0 : 1; };
      auto side_at = [](std::size_t pos) { return pos % 2 == 0 ? Side::kA : Side::kB; };
      std::vector<std::uint32_t> digits(len);
      for (std::size_t pos = 0; pos < len; ++pos) digits[pos] = lowest(pos);
      while (true) {
        std::vector<Letter> prefix, cycle;
        for (std::size_t pos = 0; pos < len; ++pos) {
          (pos < p ? prefix : cycle).push_back(Letter{side_at(pos), digits[pos]});
        }
        found.insert(BoundaryCode::make(std::move(prefix), std::move(cycle)));
        bool advanced = false;
        for (std::size_t pos = len; pos-- > 0;) {
          if (++digits[pos] < am.index(side_at(pos))) {
            advanced = true;
            break;
          }
          digits[pos] = lowest(pos);
        }
        if (!advanced) break;
      }
    }
  }
  std::vector<BoundaryCode> points(found.begin(), found.end());
  std::stable_sort(points.begin(), points.end(), [](const BoundaryCode& a, const BoundaryCode& b) {
    const auto la = a.prefix().size() + a.cycle().size();
    const auto lb = b.prefix().size() + b.cycle().size();
    if (la != lb) return la < lb;
    return a.prefix().size() < b.prefix().size();
  });
  SampleSpace out;
  out.p_max = p_max;
  out.q_max = q_max;
  out.points = FinitePointSet(std::move(points));
  return out;
}

bool WitnessChain::monotone() const {
  for (std::size_t n = 1; n < chain.size(); ++n) {
    if (!chain[n - 1].subset_of(chain[n])) return false;
  }
  return true;
}

bool WitnessChain::union_matches_target() const {
  return !chain.empty() && chain.back() == target;
}

std::size_t WitnessChain::stabilization_index() const {
  std::size_t n = chain.size() - 1;
  while (n > 0 && chain[n - 1] == chain.back()) --n;
  return n;
}

WitnessChain hyperfiniteness_witness(const Amalgam& am, const SampleSpace& sample,
                                     std::size_t n_max) {
  const auto& pts = sample.points.points();
  const std::size_t bound = default_theorem_A_bound(am);
  for (const auto& x : pts) {
    if (!check_theorem_A(am, x, bound)) {
      fail(ErrorCode::kHypothesis, "stabilizer hypothesis fails at " + to_string(am, x));
    }
  }

  std::vector<std::vector<OrbitRepresentative>> inv;
  inv.reserve(pts.size());
  for (const auto& x : pts) inv.push_back(tail_invariants(am, x));

  WitnessChain out;
  UnionFind uf(pts.size());
  std::map<LetterSequence, std::size_t> owner;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (n >= inv[k].size()) continue;
      auto [it, inserted] = owner.emplace(inv[k][n].code, k);
      if (!inserted) uf.unite(it->second, k);
    }
    out.chain.push_back(uf.finish());
  }

  UnionFind target(pts.size());
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t r : reps) {
      if (orbit_equivalent(am, pts[k], pts[r]).equivalent) {
        target.unite(r, k);
        break;
      }
    }
    if (target.find(k) == k) reps.push_back(k);
  }
  out.target = target.finish();
  return out;
}

}  // namespace arbor
