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
#include <cctype>

#include "arbor/error.hpp"
#include "arbor/groups.hpp"

namespace arbor {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void check_embedding(const FiniteGroup& c, const FiniteGroup& target, const Homomorphism& e,
                     const char* what) {
  if (e.map.size() != c.order()) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + " has the wrong domain size");
  }
  for (Elem x : e.map) {
    if (x >= target.order()) fail(ErrorCode::kInvalidArgument, std::string(what) + " maps out of range");
  }
  for (Elem x = 0; x < c.order(); ++x) {
    for (Elem y = 0; y < c.order(); ++y) {
      if (e(c.mul(x, y)) != target.mul(e(x), e(y))) {
        fail(ErrorCode::kInvalidArgument, std::string(what) + " is not a homomorphism");
      }
    }
  }
  std::vector<bool> hit(target.order(), false);
  for (Elem x : e.map) {
    if (hit[x]) fail(ErrorCode::kInvalidArgument, std::string(what) + " is not injective");
    hit[x] = true;
  }
}

}  // namespace

Amalgam Amalgam::make(FiniteGroup h, FiniteGroup k, FiniteGroup c, Homomorphism embed_h,
                      Homomorphism embed_k) {
  check_embedding(c, h, embed_h, "embedding of C into H");
  check_embedding(c, k, embed_k, "embedding of C into K");
  embed_h.injective = embed_k.injective = true;

  Amalgam am;
  am.h_ = std::move(h);
  am.k_ = std::move(k);
  am.c_ = std::move(c);
  am.embed_h_ = std::move(embed_h);
  am.embed_k_ = std::move(embed_k);

  for (Side s : {Side::kA, Side::kB}) {
    const FiniteGroup& g = am.group(s);
    const Homomorphism& e = am.embedding(s);
    CosetPartition part = left_cosets(g, e.map);
    if (part.transversal.reps.size() < 2) {
      fail(ErrorCode::kDegenerate, std::string("index of C in ") + (s == Side::kA ? "H" : "K") +
                                       " is 1; the Bass-Serre tree is degenerate");
    }
    auto& pre = am.preimage_[idx(s)];
    pre.assign(g.order(), std::nullopt);
    for (Elem x = 0; x < am.c_.order(); ++x) pre[e(x)] = x;

    auto& splits = am.splits_[idx(s)];
    splits.resize(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      const std::uint32_t r = part.coset_of[x];
      const Elem rep = part.transversal.reps[r];
      const Elem rest = g.mul(g.inv(rep), x);
      splits[x] = Split{r, *pre[rest]};
    }
    (s == Side::kA ? am.trans_a_ : am.trans_b_) = std::move(part.transversal);
  }
  return am;
}

std::optional<Elem> Amalgam::preimage(Side s, Elem h) const { return preimage_[idx(s)][h]; }

std::optional<std::uint32_t> Amalgam::find_letter(Side s, std::string_view name) const {
  auto e = group(s).find(name);
  if (!e) return std::nullopt;
  const auto& reps = transversal(s).reps;
  auto it = std::find(reps.begin(), reps.end(), *e);
  if (it == reps.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - reps.begin());
}

Amalgam::CarryStep Amalgam::carry_through(Elem c, Letter x) const {
  const FiniteGroup& g = group(x.side);
  const Split sp = split(x.side, g.mul(embed(x.side, c), rep_element(x)));
  return CarryStep{Letter{x.side, sp.rep}, sp.carry};
}

void append(const Amalgam& am, ReducedWord& w, TaggedElement x) {
  const FiniteGroup& g = am.group(x.side);
  Elem acc = g.mul(am.embed(x.side, w.carry), x.element);
  if (!w.letters.empty() && w.letters.back().side == x.side) {
    acc = g.mul(am.rep_element(w.letters.back()), acc);
    w.letters.pop_back();
  }
  const Amalgam::Split sp = am.split(x.side, acc);
  if (sp.rep != 0) w.letters.push_back(Letter{x.side, sp.rep});
  w.carry = sp.carry;
}

ReducedWord normal_form(const Amalgam& am, std::span<const TaggedElement> word) {
  ReducedWord w;
  for (const TaggedElement& x : word) {
    if (x.element >= am.group(x.side).order()) {
      fail(ErrorCode::kInvalidArgument, "word entry out of range");
    }
    append(am, w, x);
  }
  return w;
}

ReducedWord from_element(const Amalgam& am, TaggedElement x) {
  return normal_form(am, std::span<const TaggedElement>(&x, 1));
}

std::vector<TaggedElement> expand(const Amalgam& am, const ReducedWord& u) {
  std::vector<TaggedElement> out;
  out.reserve(u.letters.size() + 1);
  for (Letter x : u.letters) out.push_back({x.side, am.rep_element(x)});
  if (u.carry != 0) out.push_back({Side::kA, am.embed(Side::kA, u.carry)});
  return out;
}

ReducedWord multiply(const Amalgam& am, const ReducedWord& u, const ReducedWord& v) {
  ReducedWord w = u;
  for (const TaggedElement& x : expand(am, v)) append(am, w, x);
  return w;
}

ReducedWord invert(const Amalgam& am, const ReducedWord& u) {
  std::vector<TaggedElement> word;
  word.reserve(u.letters.size() + 1);
  if (u.carry != 0) word.push_back({Side::kA, am.embed(Side::kA, am.C().inv(u.carry))});
  for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it) {
    const FiniteGroup& g = am.group(it->side);
    word.push_back({it->side, g.inv(am.rep_element(*it))});
  }
  return normal_form(am, word);
}

std::vector<ReducedWord> enumerate_words(const Amalgam& am, std::size_t max_letters) {
  std::vector<std::vector<Letter>> layer{{}};
  std::vector<std::vector<Letter>> all{{}};
  for (std::size_t len = 1; len <= max_letters; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer) {
      for (Side s : {Side::kA, Side::kB}) {
        if (!w.empty() && w.back().side == s) continue;
        for (std::uint32_t r = 1; r < am.index(s); ++r) {
          auto ext = w;
          ext.push_back(Letter{s, r});
          next.push_back(std::move(ext));
        }
      }
    }
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::vector<ReducedWord> out;
  out.reserve(all.size() * am.C().order());
  for (const auto& letters : all) {
    for (Elem c = 0; c < am.C().order(); ++c) out.push_back(ReducedWord{letters, c});
  }
  return out;
}

namespace {

std::string qualified_name(const Amalgam& am, Side s, Elem x) {
  const std::string& name = am.group(s).name(x);
  auto other_side = am.group(other(s)).find(name);
  if (other_side && !(x == 0 && *other_side == 0)) {
    return std::string(s == Side::kA ? "H:" : "K:") + name;
  }
  return name;
}

TaggedElement resolve_token(const Amalgam& am, std::string_view token) {
  if (token.size() > 2 && token[1] == ':' && (token[0] == 'H' || token[0] == 'K')) {
    const Side s = token[0] == 'H' ? Side::kA : Side::kB;
    return {s, am.group(s).parse_word(trim(token.substr(2)))};
  }
  std::optional<Elem> in_h, in_k;
  try {
    in_h = am.H().parse_word(token);
  } catch (const Error&) {
  }
  try {
    in_k = am.K().parse_word(token);
  } catch (const Error&) {
  }
  if (in_h && in_k) {
    if (*in_h == 0 && *in_k == 0) return {Side::kA, 0};
    fail(ErrorCode::kParse, "factor '" + std::string(token) +
                                "' names elements of both H and K; qualify it as H:... or K:...");
  }
  if (in_h) return {Side::kA, *in_h};
  if (in_k) return {Side::kB, *in_k};
  fail(ErrorCode::kParse, "factor '" + std::string(token) + "' is not an element of H or K");
}

}  // namespace

std::string to_string(const Amalgam& am, const ReducedWord& u) {
  if (u.is_identity()) return "1";
  std::string out;
  for (Letter x : u.letters) {
    if (!out.empty()) out += '*';
    out += qualified_name(am, x.side, am.rep_element(x));
  }
  if (u.carry != 0) {
    if (!out.empty()) out += '*';
    out += qualified_name(am, Side::kA, am.embed(Side::kA, u.carry));
  }
  return out;
}

std::vector<TaggedElement> parse_tagged_word(const Amalgam& am, std::string_view text) {
  std::vector<TaggedElement> out;
  std::string_view rest = trim(text);
  if (rest.empty()) fail(ErrorCode::kParse, "empty word");
  while (true) {
    auto star = rest.find('*');
    std::string_view token = trim(rest.substr(0, star));
    if (token.empty()) fail(ErrorCode::kParse, "empty factor in word '" + std::string(text) + "'");
    // A factor like "a^2" is a single H-element; "a*a" is two factors.
    out.push_back(resolve_token(am, token));
    if (star == std::string_view::npos) break;
    rest.remove_prefix(star + 1);
  }
  return out;
}

ReducedWord parse_word(const Amalgam& am, std::string_view text) {
  return normal_form(am, parse_tagged_word(am, text));
}

}  // namespace arbor
