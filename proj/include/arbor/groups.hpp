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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace arbor {

// Index of a group element. Element 0 is always the identity.
using Elem = std::uint32_t;

// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Elem>;

inline constexpr std::size_t kDefaultOrderCap = 256;

// A finite group given by its full multiplication table.
class FiniteGroup {
 public:
  // The trivial group.
  FiniteGroup();

  // Validates the table exhaustively: Latin-square rows and columns, element 0
  // a two-sided identity, associativity. `generators` are element indices used
  // to extend homomorphisms and to parse words; empty means "every
  // non-identity element".
  static FiniteGroup from_table(std::vector<std::vector<Elem>> table,
                                std::vector<std::string> names,
                                std::vector<Elem> generators = {});

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return 0; }
  Elem mul(Elem x, Elem y) const { return table_[x * order_ + y]; }
  Elem inv(Elem x) const { return inverse_[x]; }
  Elem pow(Elem x, long long k) const;

  const std::string& name(Elem x) const { return names_[x]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  const std::vector<Elem>& generators() const noexcept { return generators_; }

  // Evaluates a word such as "a^2*b", "a*a", "1" or "b^-1". Tokens are element
  // names, optionally raised to an integer power.
  Elem parse_word(std::string_view word) const;

  ElementSet all_elements() const;

  friend bool operator==(const FiniteGroup& x, const FiniteGroup& y) {
    return x.table_ == y.table_ && x.names_ == y.names_;
  }

 private:
  std::size_t order_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> names_;
  std::vector<Elem> generators_;
  std::map<std::string, Elem, std::less<>> by_name_;
};

struct CyclicSpec {
  std::size_t n = 1;
  std::string generator = "g";
};

struct TableSpec {
  std::vector<std::vector<Elem>> table;
  std::vector<std::string> names;       // empty: "1", "e1", "e2", ...
  std::vector<std::string> generators;  // names; empty: all non-identity
};

// Permutations act on points 0..degree-1 and are composed left to right:
// (p*q)(i) = q(p(i)).
struct PermutationSpec {
  std::size_t degree = 0;
  std::vector<std::vector<std::uint32_t>> generators;
  std::vector<std::string> generator_names;
  std::size_t order_cap = kDefaultOrderCap;
};

using GroupSpec = std::variant<CyclicSpec, TableSpec, PermutationSpec>;

// Builds and validates a group. Cyclic elements are named "1", "g", "g^2", ...;
// permutation groups are enumerated breadth-first in generator order from the
// identity and each element is named by its discovery word ("a*b*a").
FiniteGroup make_group(const GroupSpec& spec);

// Parses 1-based cycle notation such as "(1 2 3)(4 5)" into an image list on
// `degree` points (0-based).
std::vector<std::uint32_t> parse_cycles(std::string_view text,
                                        std::size_t degree);

struct Homomorphism {
  std::vector<Elem> map;
  bool injective = false;

  Elem operator()(Elem x) const { return map[x]; }
};

// Extends generator images to a homomorphism and checks the homomorphism law
// on every pair. `images` is keyed by generator element of `source`.
Homomorphism make_homomorphism(const FiniteGroup& source,
                               const FiniteGroup& target,
                               const std::map<Elem, Elem>& images);

bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset);

struct Transversal {
  ElementSet subgroup;
  std::vector<Elem> reps;  // reps[0] is the identity
};

struct CosetPartition {
  std::vector<ElementSet> cosets;     // cosets[i] contains reps[i]
  std::vector<std::uint32_t> coset_of;  // element -> coset index
  Transversal transversal;
};

// Left cosets gS. Each coset is represented by its least element index and
// cosets are listed in increasing order of representative.
CosetPartition left_cosets(const FiniteGroup& g, std::span<const Elem> subgroup);

ElementSet subgroup_intersection(const FiniteGroup& g, std::span<const Elem> s1,
                                 std::span<const Elem> s2);
ElementSet conjugate_subgroup(const FiniteGroup& g, Elem x,
                              std::span<const Elem> s);

// ---------------------------------------------------------------------------
// Amalgamated free products G = H *_C K of finite groups.
// ---------------------------------------------------------------------------

// A-side letters are coset representatives of C in H, B-side of C in K.
enum class Side : std::uint8_t { kA = 0, kB = 1 };

inline constexpr Side other(Side s) noexcept {
  return s == Side::kA ? Side::kB : Side::kA;
}

struct Letter {
  Side side = Side::kA;
  std::uint32_t rep = 0;  // index into the side's transversal

  bool trivial() const noexcept { return rep == 0; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// An element of an amalgam written x_1 x_2 ... x_n c with alternating,
// nontrivial letters and a trailing carry c in C.
struct ReducedWord {
  std::vector<Letter> letters;
  Elem carry = 0;  // element of C

  bool is_identity() const noexcept { return letters.empty() && carry == 0; }
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;
};

// An element of H (side A) or K (side B).
struct TaggedElement {
  Side side = Side::kA;
  Elem element = 0;

  friend auto operator<=>(const TaggedElement&, const TaggedElement&) = default;
};

class Amalgam {
 public:
  // Rejects non-injective embeddings and index-1 sides.
  static Amalgam make(FiniteGroup h, FiniteGroup k, FiniteGroup c,
                      Homomorphism embed_h, Homomorphism embed_k);

  const FiniteGroup& group(Side s) const { return s == Side::kA ? h_ : k_; }
  const FiniteGroup& H() const noexcept { return h_; }
  const FiniteGroup& K() const noexcept { return k_; }
  const FiniteGroup& C() const noexcept { return c_; }
  const Homomorphism& embedding(Side s) const {
    return s == Side::kA ? embed_h_ : embed_k_;
  }
  const Transversal& transversal(Side s) const {
    return s == Side::kA ? trans_a_ : trans_b_;
  }

  // [H:C] for side A, [K:C] for side B.
  std::size_t index(Side s) const { return transversal(s).reps.size(); }

  Elem embed(Side s, Elem c) const { return embedding(s)(c); }
  Elem rep_element(Letter x) const { return transversal(x.side).reps[x.rep]; }

  struct Split {
    std::uint32_t rep;  // transversal index
    Elem carry;         // element of C
  };
  // h = rep * embed(carry) for h in group(s).
  Split split(Side s, Elem h) const { return splits_[idx(s)][h]; }

  // Element of C whose image is h, if h lies in the image of C.
  std::optional<Elem> preimage(Side s, Elem h) const;

  const std::string& letter_name(Letter x) const {
    return group(x.side).name(rep_element(x));
  }
  std::optional<std::uint32_t> find_letter(Side s, std::string_view name) const;

  // c . x = x' . c' where x is a letter of side s.
  struct CarryStep {
    Letter letter;
    Elem carry;
  };
  CarryStep carry_through(Elem c, Letter x) const;

 private:
  Amalgam() = default;
  static std::size_t idx(Side s) { return static_cast<std::size_t>(s); }

  FiniteGroup h_;
  FiniteGroup k_;
  FiniteGroup c_;
  Homomorphism embed_h_;
  Homomorphism embed_k_;
  Transversal trans_a_;
  Transversal trans_b_;
  std::vector<Split> splits_[2];
  std::vector<std::optional<Elem>> preimage_[2];
};

// Multiplies w on the right by x, keeping normal form: the carry moves into
// x's group, merges with a trailing letter of the same side, and the product
// splits as representative times carry (a trivial representative cancels).
void append(const Amalgam& am, ReducedWord& w, TaggedElement x);

// Left-to-right absorption into normal form.
ReducedWord normal_form(const Amalgam& am, std::span<const TaggedElement> word);

ReducedWord from_element(const Amalgam& am, TaggedElement x);
ReducedWord multiply(const Amalgam& am, const ReducedWord& u,
                     const ReducedWord& v);
ReducedWord invert(const Amalgam& am, const ReducedWord& u);

// Letters as representative elements followed by the carry as an element of H
// (omitted when trivial).
std::vector<TaggedElement> expand(const Amalgam& am, const ReducedWord& u);

// Every reduced word with at most `max_letters` letters and any carry, in
// order of letter count, then lexicographically.
std::vector<ReducedWord> enumerate_words(const Amalgam& am,
                                         std::size_t max_letters);

// "a*b^2*a^2": letter names joined by '*', then the carry as an element of H
// if it is nontrivial; "1" for the identity. Names that exist in both H and K
// with different meanings are qualified as "H:x" / "K:x".
std::string to_string(const Amalgam& am, const ReducedWord& u);

// Inverse of to_string; also accepts arbitrary products of H and K elements.
std::vector<TaggedElement> parse_tagged_word(const Amalgam& am,
                                             std::string_view text);
ReducedWord parse_word(const Amalgam& am, std::string_view text);

}  // namespace arbor
