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
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arbor/bass_serre.hpp"
#include "arbor/groups.hpp"

namespace arbor {

// Sorted list of point indices.
using Subset = std::vector<std::size_t>;

// Boundary codes indexed 0..n-1 with lookup by canonical form.
class FinitePointSet {
 public:
  FinitePointSet() = default;
  explicit FinitePointSet(std::vector<BoundaryCode> points);

  std::size_t size() const noexcept { return points_.size(); }
  const BoundaryCode& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<BoundaryCode>& points() const noexcept { return points_; }
  std::optional<std::size_t> find(const BoundaryCode& x) const;

 private:
  std::vector<BoundaryCode> points_;
  std::map<BoundaryCode, std::size_t> index_;
};

// An equivalence relation on 0..n-1, stored as the least index of each
// point's class.
class FiniteER {
 public:
  FiniteER() = default;
  static FiniteER identity(std::size_t n);
  static FiniteER full(std::size_t n);
  // Points with equal labels are related.
  template <class Label>
  static FiniteER from_labels(std::span<const Label> labels) {
    std::map<Label, std::size_t> first;
    std::vector<std::size_t> rep(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) rep[i] = first.emplace(labels[i], i).first->second;
    return FiniteER(std::move(rep));
  }

  std::size_t size() const noexcept { return rep_.size(); }
  std::size_t class_rep(std::size_t i) const { return rep_[i]; }
  bool related(std::size_t i, std::size_t j) const { return rep_[i] == rep_[j]; }
  std::size_t class_count() const;
  // Classes ordered by least element, each sorted.
  std::vector<Subset> classes() const;
  // Every class of *this lies inside a class of other.
  bool subset_of(const FiniteER& other) const;

  friend bool operator==(const FiniteER&, const FiniteER&) = default;

 private:
  friend class UnionFind;
  explicit FiniteER(std::vector<std::size_t> rep) : rep_(std::move(rep)) {}
  std::vector<std::size_t> rep_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t i);
  bool unite(std::size_t i, std::size_t j);
  FiniteER finish();

 private:
  std::vector<std::size_t> parent_;
};

Subset saturation(const FiniteER& e, std::span<const std::size_t> a);
// E restricted to A; point k of the result is a[k].
FiniteER restrict(const FiniteER& e, std::span<const std::size_t> a);
// Least index of every class.
Subset transversal(const FiniteER& e);

struct TransversalPiece {
  Subset domain;
  Subset transversal;  // a transversal of E restricted to domain
};

// Saturates each domain, keeps the part not covered by earlier saturations and
// the transversal points inside it, and returns the union.
Subset glue_transversals(std::span<const TransversalPiece> pieces, const FiniteER& e);

struct ReductionWitness {
  std::vector<std::size_t> f;  // source point -> target point
  FiniteER source;
  FiniteER target;

  // x E x' iff f(x) F f(x') for all pairs.
  bool validate() const;
};

struct QuotientReduction {
  Subset representatives;  // transversal of E_N; quotient point k is representatives[k]
  FiniteER induced;        // E_MN on the representatives
  ReductionWitness witness;  // E_MN reduces to induced via the quotient map
};

// Quotient of the sample by E_N. Requires E_N inside E_MN.
QuotientReduction quotient_reduction(const FiniteER& e_n, const FiniteER& e_mn);

// ---------------------------------------------------------------------------
// Tail and orbit equivalence of boundary codes.
// ---------------------------------------------------------------------------

// Least (i, j) in (i + j, i) order with x shifted i times equal to y shifted
// j times, searching i <= factor * (|prefix x| + |cycle x|) and likewise j.
std::optional<std::pair<std::size_t, std::size_t>> tail_equivalent(
    const LetterSequence& x, const LetterSequence& y, std::size_t factor = 1);
inline std::optional<std::pair<std::size_t, std::size_t>> tail_equivalent(
    const BoundaryCode& x, const BoundaryCode& y, std::size_t factor = 1) {
  return tail_equivalent(x.sequence(), y.sequence(), factor);
}

struct OrbitRepresentative {
  LetterSequence code;
  TaggedElement h;  // code = h . x, h in the root vertex group
};

// Least image of x under the stabilizer of its root vertex (H for sequences
// starting on side A, K otherwise).
OrbitRepresentative orbit_representative(const Amalgam& am, const LetterSequence& x);
BoundaryCode canonical_orbit_code(const Amalgam& am, const BoundaryCode& x);

// Orbit invariants of the tails of x: entry i is the orbit representative of
// x shifted i times, for i < |prefix| + |cycle|. Later shifts repeat these.
std::vector<OrbitRepresentative> tail_invariants(const Amalgam& am, const BoundaryCode& x);

// The element spelled by the first i letters of x.
ReducedWord initial_word(const Amalgam& am, const BoundaryCode& x, std::size_t i);

struct OrbitDecision {
  bool equivalent = false;
  std::size_t i = 0;
  std::size_t j = 0;
  ReducedWord witness;  // act_on_boundary(witness, y) == x
};

// Complete decision via tail invariants; the witness is verified before it is
// returned (kVerification otherwise).
OrbitDecision orbit_equivalent(const Amalgam& am, const BoundaryCode& x, const BoundaryCode& y);

// First g with at most `word_bound` letters (enumerate_words order) mapping y
// to x, if any.
std::optional<ReducedWord> orbit_equivalent_bruteforce(const Amalgam& am, const BoundaryCode& x,
                                                       const BoundaryCode& y,
                                                       std::size_t word_bound);

// ---------------------------------------------------------------------------
// Samples and witness chains.
// ---------------------------------------------------------------------------

struct SampleSpace {
  std::size_t p_max = 0;
  std::size_t q_max = 0;
  FinitePointSet points;
};

// Every canonical code with prefix length <= p_max and cycle length <= q_max,
// ordered by total length, then prefix length, then letters.
SampleSpace make_sample_space(const Amalgam& am, std::size_t p_max, std::size_t q_max);

struct WitnessChain {
  std::vector<FiniteER> chain;  // E_0, E_1, ..., E_{n_max}
  FiniteER target;              // orbit equivalence on the sample

  bool monotone() const;
  bool union_matches_target() const;
  // Least n with E_n equal to the last relation.
  std::size_t stabilization_index() const;
};

// E_n relates points whose tail invariants up to shift n meet, closed
// transitively. Runs check_theorem_A on every point first and throws
// kHypothesis naming the first failing point.
WitnessChain hyperfiniteness_witness(const Amalgam& am, const SampleSpace& sample,
                                     std::size_t n_max);

inline std::size_t default_n_max(const Amalgam& am, std::size_t p_max, std::size_t q_max) {
  return p_max + q_max * am.C().order();
}

}  // namespace arbor
