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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arbor/error.hpp"
#include "arbor/groups.hpp"
#include "arbor/rational.hpp"

namespace arbor {

// A finitely supported probability measure with exact rational weights. Zero
// weights are dropped.
template <class Key>
class ProbVector {
 public:
  ProbVector() = default;

  static ProbVector make(std::map<Key, Rational> weights) {
    Rational total = 0;
    ProbVector out;
    for (auto& [k, w] : weights) {
      if (sgn(w) < 0) fail(ErrorCode::kInvalidArgument, "negative probability weight");
      total += w;
      if (sgn(w) > 0) out.weights_.emplace(k, w);
    }
    if (total != 1) fail(ErrorCode::kInvalidArgument, "weights sum to " + to_string(total) + ", not 1");
    return out;
  }
  static ProbVector point(const Key& k) { return make({{k, Rational(1)}}); }
  static ProbVector uniform(std::span<const Key> keys) {
    std::map<Key, Rational> w;
    for (const auto& k : keys) w[k] = Rational(1, static_cast<unsigned long>(keys.size()));
    return make(std::move(w));
  }

  const std::map<Key, Rational>& weights() const noexcept { return weights_; }
  Rational at(const Key& k) const {
    auto it = weights_.find(k);
    return it == weights_.end() ? Rational(0) : it->second;
  }
  std::size_t support_size() const noexcept { return weights_.size(); }

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  std::map<Key, Rational> weights_;
};

template <class K>
Rational l1_distance(const std::map<K, Rational>& a, const std::map<K, Rational>& b) {
  Rational total = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      total += abs(i->second);
      ++i;
    } else if (i == a.end() || j->first < i->first) {
      total += abs(j->second);
      ++j;
    } else {
      total += abs(i->second - j->second);
      ++i;
      ++j;
    }
  }
  return total;
}

// p.x: the image of p under g -> g.x, merging mass on equal points. `act`
// returns nullopt when g.x is unknown; the key is then reported in the error.
template <class Key, class Point, class Act>
std::map<Point, Rational> pushforward(const ProbVector<Key>& p, const Point& x, Act&& act) {
  std::map<Point, Rational> out;
  for (const auto& [g, w] : p.weights()) {
    std::optional<Point> y = act(g, x);
    if (!y) fail(ErrorCode::kWindowEscape, "mass escapes the window");
    out[*y] += w;
  }
  return out;
}

struct Deviation {
  std::vector<Rational> per_generator;
  Rational max = 0;
};

// max over s in S of |p.x - p.(s.x)|_1, exact.
template <class Key, class Point, class Act>
Deviation reiter_deviation(const ProbVector<Key>& p, std::span<const Key> generators,
                           std::span<const std::string> names, Act&& act, const Point& x) {
  Deviation out;
  const auto px = pushforward(p, x, act);
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const std::string name = k < names.size() ? names[k] : "#" + std::to_string(k);
    std::optional<Point> sx = act(generators[k], x);
    if (!sx) fail(ErrorCode::kWindowEscape, "mass escapes the window under generator " + name);
    std::map<Point, Rational> psx;
    try {
      psx = pushforward(p, *sx, act);
    } catch (const Error&) {
      fail(ErrorCode::kWindowEscape, "mass escapes the window under generator " + name);
    }
    out.per_generator.push_back(l1_distance(px, psx));
    if (out.per_generator.back() > out.max) out.max = out.per_generator.back();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schreier windows.
// ---------------------------------------------------------------------------

// A ball of a Schreier graph around the trivial coset.
struct SchreierWindow {
  std::vector<std::string> vertices;  // breadth-first order, trivial coset first
  std::vector<std::size_t> distance;
  std::vector<std::string> generators;
  std::vector<std::vector<std::optional<std::size_t>>> edges;  // [s][v]
  std::vector<bool> interior;  // every generator image lies in the window

  std::optional<std::size_t> find(std::string_view label) const;
  // Vertices within distance r, ascending.
  std::vector<std::size_t> ball(std::size_t r) const;
};

using StepFn = std::function<std::optional<std::string>(const std::string&, std::size_t)>;

SchreierWindow build_window(std::string root, std::vector<std::string> generators,
                            const StepFn& step, std::size_t radius);

// Z acting on itself; generators "+1" and "-1"; labels are the integers.
SchreierWindow integer_window(std::size_t radius);
// The free group on `rank` letters acting on itself; generators a, A, b, B, ...
// (capitals are inverses); labels are reduced words, "1" for the identity.
SchreierWindow free_group_window(std::size_t rank, std::size_t radius);
// G acting on G/H by left multiplication; labels are least coset elements.
SchreierWindow coset_window(const FiniteGroup& g, std::span<const Elem> subgroup,
                            std::span<const Elem> generators);

// max over s of |p - s.p|_1 for p on window vertices.
Deviation window_deviation(const SchreierWindow& w, const ProbVector<std::size_t>& p,
                           std::span<const std::size_t> generators);

struct ReiterCertificate {
  std::vector<std::string> generators;
  std::map<std::string, Rational> p;  // vertex label -> weight
  std::optional<Rational> epsilon;    // strict bound, when one was requested
  Rational max_deviation = 0;
  std::vector<Rational> per_generator;

  // Recomputes the deviation on the window; throws kVerification on mismatch.
  void verify(const SchreierWindow& w) const;
};

// ---------------------------------------------------------------------------
// Exact linear programming.
// ---------------------------------------------------------------------------

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearProgram {
  std::vector<Rational> objective;  // minimized; variables are nonnegative
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;  // sparse
  std::vector<RowSense> senses;
  std::vector<Rational> rhs;
};

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded } status = Status::kInfeasible;
  std::vector<Rational> x;
  Rational value = 0;
  std::size_t pivots = 0;
};

// Two-phase dense tableau simplex over the rationals.
LpSolution solve_lp(const LinearProgram& lp);

struct ReiterLpResult {
  ProbVector<std::size_t> p;
  Rational value = 0;
  ReiterCertificate certificate;
  std::size_t pivots = 0;
};

// Minimizes max_s |p - s.p|_1 over p supported on `support`. Every support
// vertex must be interior.
ReiterLpResult reiter_lp(const SchreierWindow& w, std::span<const std::size_t> generators,
                         std::span<const std::size_t> support);

// Uniform measure on G/H; rejects eps <= 0.
ReiterCertificate check_uniform_coamenable(const FiniteGroup& g, std::span<const Elem> subgroup,
                                           std::span<const Elem> generators, const Rational& eps);

// ---------------------------------------------------------------------------
// Amenability witness sequences for finite G-sets.
// ---------------------------------------------------------------------------

// A finite group acting on points 0..n-1.
class FiniteGSet {
 public:
  // action[g][x] = g.x.
  static FiniteGSet make(const FiniteGroup& g, std::vector<std::vector<std::size_t>> action);
  // Disjoint union of coset spaces G/H_k; point labels "k:rep".
  static FiniteGSet cosets(const FiniteGroup& g, const std::vector<ElementSet>& subgroups);

  const FiniteGroup& group() const noexcept { return g_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t act(Elem g, std::size_t x) const { return action_[g][x]; }
  ElementSet stabilizer(std::size_t x) const;
  std::vector<std::size_t> orbit(std::size_t x) const;  // ascending

 private:
  FiniteGroup g_;
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> action_;
};

// Calls visit on finitely supported rational probability measures on 0..n-1
// in the fixed order: largest reduced denominator, support size,
// lexicographic support, lexicographic weights. Stops when visit returns true
// (and returns that measure) or after all measures with denominators up to
// max_denominator.
std::optional<ProbVector<Elem>> enumerate_measures(
    std::size_t n, std::size_t max_denominator,
    const std::function<bool(const ProbVector<Elem>&)>& visit);

// Largest |p.y - p.(s.y)|_1 over s in S and y in the orbit of x.
Rational orbit_deviation(const FiniteGSet& x_set, const ProbVector<Elem>& p,
                         std::span<const Elem> generators, std::size_t x);

struct DecayRow {
  std::size_t x = 0;
  Elem g = 0;
  std::vector<Rational> deviation;  // n = 1..n_max: |q_n^x - q_n^{gx}|_1
  std::vector<bool> g_in_s;         // g in S_n
};

struct WitnessSequence {
  std::vector<std::vector<ProbVector<Elem>>> p;               // [x][n-1]
  std::vector<std::vector<std::map<std::size_t, Rational>>> q;  // [x][n-1]
  std::vector<DecayRow> decay;
};

// p_n^x is the first enumerated (S_n, 1/n)-Reiter function for the action on
// the orbit of x; S_n is s_chain[min(n, size) - 1]. Throws kHypothesis when
// the enumeration is exhausted.
WitnessSequence amenability_witness_sequence(
    const FiniteGSet& x_set, const std::vector<std::vector<Elem>>& s_chain, std::size_t n_max,
    std::size_t max_denominator, std::span<const std::pair<std::size_t, Elem>> pairs);

// ---------------------------------------------------------------------------
// Borel-Cantelli index extraction.
// ---------------------------------------------------------------------------

struct DeviationTensor {
  std::vector<std::string> elements;  // g_1, g_2, ...
  std::vector<Rational> mu;           // weights of the points
  // values[i][j][g][x] = |p_ij^x - p_ij^{gx}|_1
  std::vector<std::vector<std::vector<std::vector<Rational>>>> values;

  std::size_t rows() const noexcept { return values.size(); }
  std::size_t cols() const noexcept { return values.empty() ? 0 : values[0].size(); }
  // Shape, ranges and mu checks; throws kInvalidArgument.
  void validate() const;
};

struct CfwResult {
  std::vector<std::size_t> f;
  std::vector<Rational> union_mass;  // nu of the union over j of A_ij
  std::vector<Rational> bad_mass;    // nu of that union minus A_{i,f(i)}
};

// nu(x, g_n, m) = mu(x) / 2^{nm}; A_ij = {(x, g, m) : d[i][j'][g][x] < 1/m for
// all j' >= j}; f(i) is the least j with nu(union minus A_ij) < 2^-i.
Rational cfw_mass(const DeviationTensor& t, std::size_t i, std::size_t j);
CfwResult cfw_extract(const DeviationTensor& t);

// Tensor of |p_i.y - p_i.(g.y)|_1 at y = shift^j(x) for a witness sequence p_i.
DeviationTensor shift_tensor(const FiniteGSet& x_set, const std::vector<ProbVector<Elem>>& p,
                             std::span<const std::size_t> shift, std::span<const Elem> elements,
                             std::size_t cols, std::vector<Rational> mu);

}  // namespace arbor
