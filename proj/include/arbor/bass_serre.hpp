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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arbor/groups.hpp"

namespace arbor {

inline constexpr std::size_t kDefaultVertexCap = 100000;

enum class VertexType : std::uint8_t { kH = 0, kK = 1 };

// A vertex w.H or w.K of the Bass-Serre tree, coded by the letters of the
// path from the base vertex H. The first letter is an A-side representative
// (possibly the identity); every later letter is nontrivial. A word ending in
// an A-letter is a K-vertex, one ending in a B-letter (or empty) an H-vertex,
// and the word length is the distance to the base.
struct TreeVertex {
  VertexType type = VertexType::kH;
  std::vector<Letter> word;

  std::size_t depth() const noexcept { return word.size(); }
  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;
};

TreeVertex base_vertex();

// Checks the coding invariants; throws kInvalidArgument.
void validate_vertex(const Amalgam& am, const TreeVertex& v);

// The coset g.X of the given type.
TreeVertex vertex_of(const Amalgam& am, const ReducedWord& g, VertexType type);

// The group element spelled by the vertex word.
ReducedWord vertex_element(const Amalgam& am, const TreeVertex& v);

TreeVertex act_on_vertex(const Amalgam& am, const ReducedWord& g, const TreeVertex& v);

bool adjacent(const TreeVertex& v, const TreeVertex& w);

std::string word_string(const Amalgam& am, std::span<const Letter> word);

struct TruncatedTree {
  std::size_t radius = 0;
  std::vector<TreeVertex> vertices;  // breadth-first order, base first
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (parent, child)
  std::size_t base = 0;

  std::optional<std::size_t> find(const TreeVertex& v) const;
  std::vector<std::size_t> counts_by_distance() const;
  std::vector<std::size_t> degrees() const;

  std::map<TreeVertex, std::size_t> index;
};

// All vertices within `radius` of the base; children are ordered by letter.
TruncatedTree build_tree(const Amalgam& am, std::size_t radius,
                         std::size_t vertex_cap = kDefaultVertexCap);

struct TreeCheck {
  bool connected = false;
  bool acyclic = false;
  bool biregular = false;  // degree [H:C] / [K:C] strictly inside the radius
};
TreeCheck check_tree(const Amalgam& am, const TruncatedTree& t);

// Graphviz export; H-vertices are ellipses, K-vertices boxes. Byte-stable.
std::string to_dot(const Amalgam& am, const TruncatedTree& t);

struct GeodesicPath {
  std::vector<TreeVertex> vertices;

  std::size_t length() const noexcept {
    return vertices.empty() ? 0 : vertices.size() - 1;
  }
  friend bool operator==(const GeodesicPath&, const GeodesicPath&) = default;
};

// The unique geodesic, via the longest common prefix of the two words.
GeodesicPath geodesic(const TreeVertex& v, const TreeVertex& w);
GeodesicPath geodesic(const TruncatedTree& t, const TreeVertex& v, const TreeVertex& w);

// ---------------------------------------------------------------------------
// Boundary points as eventually periodic letter sequences.
// ---------------------------------------------------------------------------

// An eventually periodic sequence prefix . cycle^omega that alternates sides.
// Letters after position 0 are nontrivial; the cycle has even length. Stored
// canonically: minimal period, then minimal prefix. A sequence whose first
// letter is on side A codes a ray from the base vertex H; one starting on side
// B codes a ray from the vertex K.
class LetterSequence {
 public:
  // Canonicalizes; throws kParse naming the violated rule.
  static LetterSequence make(std::vector<Letter> prefix, std::vector<Letter> cycle);

  const std::vector<Letter>& prefix() const noexcept { return prefix_; }
  const std::vector<Letter>& cycle() const noexcept { return cycle_; }
  Side start_side() const noexcept { return at(0).side; }

  Letter at(std::size_t k) const {
    return k < prefix_.size() ? prefix_[k] : cycle_[(k - prefix_.size()) % cycle_.size()];
  }
  // The sequence with its first k letters dropped.
  LetterSequence shifted(std::size_t k) const;

  friend auto operator<=>(const LetterSequence&, const LetterSequence&) = default;

 private:
  std::vector<Letter> prefix_;
  std::vector<Letter> cycle_;
};

// A point of the boundary, coded by the ray from the base vertex.
class BoundaryCode {
 public:
  static BoundaryCode make(std::vector<Letter> prefix, std::vector<Letter> cycle);
  static BoundaryCode from_sequence(LetterSequence seq);

  const LetterSequence& sequence() const noexcept { return seq_; }
  const std::vector<Letter>& prefix() const noexcept { return seq_.prefix(); }
  const std::vector<Letter>& cycle() const noexcept { return seq_.cycle(); }
  Letter at(std::size_t k) const { return seq_.at(k); }

  friend auto operator<=>(const BoundaryCode&, const BoundaryCode&) = default;

 private:
  explicit BoundaryCode(LetterSequence seq) : seq_(std::move(seq)) {}
  LetterSequence seq_;
};

// "prefix=a,b;cycle=a,b" with letters written as transversal element names.
std::string to_string(const Amalgam& am, const LetterSequence& x);
std::string to_string(const Amalgam& am, const BoundaryCode& x);
BoundaryCode parse_code(const Amalgam& am, std::string_view text);

// Checks that every letter indexes a valid representative.
void validate_letters(const Amalgam& am, const LetterSequence& x);

// Path of the first n+1 vertices of the ray.
GeodesicPath code_truncate(const BoundaryCode& x, std::size_t n);

// Canonical code of the eventually periodic stream prefix . cycle^omega.
// Throws kParse on non-alternating or backtracking streams.
BoundaryCode geodesic_to_code(std::vector<Letter> prefix, std::vector<Letter> cycle);

// Drops the first letter. The result starts on side B.
LetterSequence raw_shift(const LetterSequence& x);
inline LetterSequence raw_shift(const BoundaryCode& x) { return raw_shift(x.sequence()); }

// g acting on the ray coded by x, re-rooted at x's root vertex (H when x
// starts on side A, K otherwise).
LetterSequence act_on_sequence(const Amalgam& am, const ReducedWord& g, const LetterSequence& x);
BoundaryCode act_on_boundary(const Amalgam& am, const ReducedWord& g, const BoundaryCode& x);

// ---------------------------------------------------------------------------
// Segment stabilizers and the hypothesis checks.
// ---------------------------------------------------------------------------

struct SegmentStabilizer {
  GeodesicPath segment;
  std::vector<ReducedWord> elements;  // sorted
};

// Pointwise stabilizer of a geodesic segment. Base-rooted segments are handled
// exactly by filtering H; other segments are translated to start at H or K by
// the element spelled by their first vertex, which must have at most
// `search_bound` letters.
SegmentStabilizer stabilizer_of_segment(const Amalgam& am, const GeodesicPath& segment,
                                        std::size_t search_bound = 16);

struct TheoremACertificate {
  std::size_t sigma_length = 0;
  std::vector<ReducedWord> stabilizer;
  std::vector<std::size_t> chain_orders;  // |Stab(sigma_n)| for n = 0..max_len
};

// Least n <= max_len with Stab(sigma_n) = Stab(sigma_m) for n <= m <= max_len
// and every element of Stab(sigma_n) fixing x. nullopt means exhausted.
std::optional<TheoremACertificate> check_theorem_A(const Amalgam& am, const BoundaryCode& x,
                                                   std::size_t max_len);

inline std::size_t default_theorem_A_bound(const Amalgam& am) {
  return am.H().order() + am.C().order() + 2;
}

struct AcylindricityReport {
  std::size_t tree_radius = 0;
  std::size_t seg_length = 0;
  std::vector<std::pair<TreeVertex, std::size_t>> orders;  // segment end -> order
  std::size_t max_order = 0;
  std::size_t min_order = 0;
};

AcylindricityReport check_acylindricity(const Amalgam& am, std::size_t tree_radius,
                                        std::size_t seg_length = 2,
                                        std::size_t vertex_cap = kDefaultVertexCap);

}  // namespace arbor
