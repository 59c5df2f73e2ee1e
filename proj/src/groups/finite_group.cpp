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
#include <charconv>
#include <deque>
#include <set>

#include "arbor/error.hpp"
#include "arbor/groups.hpp"

namespace arbor {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_permutation_row(std::span<const Elem> row, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (Elem x : row) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

FiniteGroup::FiniteGroup()
    : order_(1), table_{0}, inverse_{0}, names_{"1"}, by_name_{{"1", 0}} {}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Elem>> table,
                                    std::vector<std::string> names,
                                    std::vector<Elem> generators) {
  const std::size_t n = table.size();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "group table is empty");
  if (names.empty()) {
    names.emplace_back("1");
    for (std::size_t i = 1; i < n; ++i) names.push_back("e" + std::to_string(i));
  }
  if (names.size() != n) {
    fail(ErrorCode::kInvalidArgument, "group has " + std::to_string(n) +
                                          " elements but " + std::to_string(names.size()) +
                                          " names");
  }

  FiniteGroup g;
  g.order_ = n;
  g.table_.clear();
  g.by_name_.clear();
  g.generators_.clear();
  g.table_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) fail(ErrorCode::kInvalidArgument, "group table is not square");
    if (!is_permutation_row(table[i], n)) {
      fail(ErrorCode::kInvalidArgument,
           "row " + std::to_string(i) + " of the group table is not a permutation");
    }
    g.table_.insert(g.table_.end(), table[i].begin(), table[i].end());
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Elem> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = table[i][j];
    if (!is_permutation_row(column, n)) {
      fail(ErrorCode::kInvalidArgument,
           "column " + std::to_string(j) + " of the group table is not a permutation");
    }
  }
  for (Elem x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) {
      fail(ErrorCode::kInvalidArgument, "element 0 is not a two-sided identity");
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const Elem xy = g.mul(x, y);
      for (Elem z = 0; z < n; ++z) {
        if (g.mul(xy, z) != g.mul(x, g.mul(y, z))) {
          fail(ErrorCode::kInvalidArgument,
               "table is not associative at (" + std::to_string(x) + ", " +
                   std::to_string(y) + ", " + std::to_string(z) + ")");
        }
      }
    }
  }
  g.inverse_.assign(n, 0);
  for (Elem x = 0; x < n; ++x) {
    // Latin rows guarantee a unique right inverse.
    Elem y = 0;
    while (g.mul(x, y) != 0) ++y;
    if (g.mul(y, x) != 0) {
      fail(ErrorCode::kInvalidArgument, "element " + std::to_string(x) + " has no two-sided inverse");
    }
    g.inverse_[x] = y;
  }
  for (Elem x = 0; x < n; ++x) {
    if (!g.by_name_.emplace(names[x], x).second) {
      fail(ErrorCode::kInvalidArgument, "duplicate element name '" + names[x] + "'");
    }
  }
  g.names_ = std::move(names);
  if (generators.empty()) {
    for (Elem x = 1; x < n; ++x) generators.push_back(x);
  }
  for (Elem s : generators) {
    if (s >= n) fail(ErrorCode::kInvalidArgument, "generator index out of range");
  }
  g.generators_ = std::move(generators);
  return g;
}

Elem FiniteGroup::pow(Elem x, long long k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Elem result = 0;
  for (long long i = 0; i < k; ++i) result = mul(result, x);
  return result;
}

std::optional<Elem> FiniteGroup::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteGroup::parse_word(std::string_view word) const {
  Elem result = 0;
  std::string_view rest = word;
  bool any = false;
  while (true) {
    auto star = rest.find('*');
    std::string_view token = trim(rest.substr(0, star));
    if (token.empty()) fail(ErrorCode::kParse, "empty factor in word '" + std::string(word) + "'");
    any = true;
    if (auto e = find(token)) {
      result = mul(result, *e);
    } else {
      auto caret = token.rfind('^');
      if (caret == std::string_view::npos) {
        fail(ErrorCode::kParse, "unknown element '" + std::string(token) + "'");
      }
      std::string_view base = trim(token.substr(0, caret));
      std::string_view exponent = trim(token.substr(caret + 1));
      long long k = 0;
      auto [ptr, ec] = std::from_chars(exponent.data(), exponent.data() + exponent.size(), k);
      if (ec != std::errc() || ptr != exponent.data() + exponent.size()) {
        fail(ErrorCode::kParse, "bad exponent in '" + std::string(token) + "'");
      }
      auto b = find(base);
      if (!b) fail(ErrorCode::kParse, "unknown element '" + std::string(base) + "'");
      result = mul(result, pow(*b, k));
    }
    if (star == std::string_view::npos) break;
    rest.remove_prefix(star + 1);
  }
  if (!any) fail(ErrorCode::kParse, "empty word");
  return result;
}

ElementSet FiniteGroup::all_elements() const {
  ElementSet all(order_);
  for (Elem x = 0; x < order_; ++x) all[x] = x;
  return all;
}

namespace {

FiniteGroup make_cyclic(const CyclicSpec& spec) {
  if (spec.n == 0) fail(ErrorCode::kInvalidArgument, "cyclic group of order 0");
  const std::size_t n = spec.n;
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i][j] = static_cast<Elem>((i + j) % n);
    if (i == 0) {
      names[i] = "1";
    } else if (i == 1) {
      names[i] = spec.generator;
    } else {
      names[i] = spec.generator + "^" + std::to_string(i);
    }
  }
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return FiniteGroup::from_table(std::move(table), std::move(names), std::move(gens));
}

FiniteGroup make_table(const TableSpec& spec) {
  FiniteGroup probe = FiniteGroup::from_table(spec.table, spec.names);
  if (spec.generators.empty()) return probe;
  std::vector<Elem> gens;
  for (const auto& name : spec.generators) {
    auto e = probe.find(name);
    if (!e) fail(ErrorCode::kInvalidArgument, "unknown generator '" + name + "'");
    gens.push_back(*e);
  }
  return FiniteGroup::from_table(spec.table, probe.names(), std::move(gens));
}

FiniteGroup make_permutation(const PermutationSpec& spec) {
  using Perm = std::vector<std::uint32_t>;
  const std::size_t d = spec.degree;
  for (const auto& p : spec.generators) {
    if (p.size() != d) fail(ErrorCode::kInvalidArgument, "generator has wrong degree");
    std::vector<Elem> row(p.begin(), p.end());
    if (!is_permutation_row(row, d)) fail(ErrorCode::kInvalidArgument, "generator is not a permutation");
  }
  std::vector<std::string> gen_names = spec.generator_names;
  for (std::size_t i = gen_names.size(); i < spec.generators.size(); ++i) {
    gen_names.push_back("s" + std::to_string(i + 1));
  }

  Perm id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<std::uint32_t>(i);
  auto compose = [d](const Perm& p, const Perm& q) {
    Perm r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = q[p[i]];
    return r;
  };

  std::vector<Perm> elements{id};
  std::vector<std::string> names{"1"};
  std::map<Perm, Elem> index{{id, 0}};
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    const Elem e = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < spec.generators.size(); ++s) {
      Perm next = compose(elements[e], spec.generators[s]);
      if (index.contains(next)) continue;
      if (elements.size() >= spec.order_cap) {
        fail(ErrorCode::kCapExceeded, "permutation group closure exceeds order cap " +
                                          std::to_string(spec.order_cap));
      }
      const Elem id_next = static_cast<Elem>(elements.size());
      index.emplace(next, id_next);
      names.push_back(e == 0 ? gen_names[s] : names[e] + "*" + gen_names[s]);
      elements.push_back(std::move(next));
      queue.push_back(id_next);
    }
  }

  const std::size_t n = elements.size();
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i][j] = index.at(compose(elements[i], elements[j]));
  }
  std::vector<Elem> gens;
  for (const auto& p : spec.generators) {
    const Elem g = index.at(p);
    if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  if (gens.empty() && n > 1) gens.push_back(1);
  return FiniteGroup::from_table(std::move(table), std::move(names), std::move(gens));
}

}  // namespace

FiniteGroup make_group(const GroupSpec& spec) {
  return std::visit(
      [](const auto& s) -> FiniteGroup {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CyclicSpec>) {
          return make_cyclic(s);
        } else if constexpr (std::is_same_v<T, TableSpec>) {
          return make_table(s);
        } else {
          return make_permutation(s);
        }
      },
      spec);
}

std::vector<std::uint32_t> parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> image(degree);
  for (std::size_t i = 0; i < degree; ++i) image[i] = static_cast<std::uint32_t>(i);
  std::vector<bool> moved(degree, false);
  std::size_t pos = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::kParse, "cycle notation '" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') bad("expected '('");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) bad("unbalanced parenthesis");
    std::vector<std::uint32_t> cycle;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::size_t i = 0;
    while (i < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[i])) || body[i] == ',') {
        ++i;
        continue;
      }
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), v);
      if (ec != std::errc()) bad("expected a point number");
      i = static_cast<std::size_t>(ptr - body.data());
      if (v == 0 || v > degree) bad("point " + std::to_string(v) + " out of range");
      if (moved[v - 1]) bad("point " + std::to_string(v) + " repeated");
      moved[v - 1] = true;
      cycle.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) image[cycle[k]] = cycle[(k + 1) % cycle.size()];
    pos = close + 1;
  }
  return image;
}

Homomorphism make_homomorphism(const FiniteGroup& source, const FiniteGroup& target,
                               const std::map<Elem, Elem>& images) {
  constexpr Elem kUnset = static_cast<Elem>(-1);
  std::vector<Elem> map(source.order(), kUnset);
  map[0] = 0;
  std::deque<Elem> queue{0};
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem s : source.generators()) {
      auto it = images.find(s);
      if (it == images.end()) {
        fail(ErrorCode::kInvalidArgument, "no image given for generator '" + source.name(s) + "'");
      }
      if (it->second >= target.order()) fail(ErrorCode::kInvalidArgument, "image out of range");
      const Elem y = source.mul(x, s);
      const Elem img = target.mul(map[x], it->second);
      if (map[y] == kUnset) {
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        fail(ErrorCode::kInvalidArgument,
             "generator images do not extend to a homomorphism (conflict at '" +
                 source.name(y) + "')");
      }
    }
  }
  if (std::find(map.begin(), map.end(), kUnset) != map.end()) {
    fail(ErrorCode::kInvalidArgument, "generators do not generate the source group");
  }
  for (Elem x = 0; x < source.order(); ++x) {
    for (Elem y = 0; y < source.order(); ++y) {
      if (map[source.mul(x, y)] != target.mul(map[x], map[y])) {
        fail(ErrorCode::kInvalidArgument, "map is not a homomorphism");
      }
    }
  }
  Homomorphism hom;
  std::set<Elem> distinct(map.begin(), map.end());
  hom.injective = distinct.size() == map.size();
  hom.map = std::move(map);
  return hom;
}

bool is_subgroup(const FiniteGroup& g, std::span<const Elem> subset) {
  if (subset.empty()) return false;
  std::vector<bool> member(g.order(), false);
  for (Elem x : subset) {
    if (x >= g.order()) return false;
    member[x] = true;
  }
  if (!member[0]) return false;
  for (Elem x : subset) {
    if (!member[g.inv(x)]) return false;
    for (Elem y : subset) {
      if (!member[g.mul(x, y)]) return false;
    }
  }
  return true;
}

namespace {

void require_subgroup(const FiniteGroup& g, std::span<const Elem> s) {
  if (!is_subgroup(g, s)) fail(ErrorCode::kNotSubgroup, "subset is not a subgroup");
}

ElementSet sorted_unique(std::span<const Elem> s) {
  ElementSet out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

CosetPartition left_cosets(const FiniteGroup& g, std::span<const Elem> subgroup) {
  require_subgroup(g, subgroup);
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  CosetPartition out;
  out.transversal.subgroup = sorted_unique(subgroup);
  out.coset_of.assign(g.order(), kUnset);
  for (Elem x = 0; x < g.order(); ++x) {
    if (out.coset_of[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.cosets.size());
    ElementSet coset;
    for (Elem s : out.transversal.subgroup) coset.push_back(g.mul(x, s));
    std::sort(coset.begin(), coset.end());
    for (Elem y : coset) out.coset_of[y] = id;
    out.cosets.push_back(std::move(coset));
    out.transversal.reps.push_back(x);
  }
  return out;
}

ElementSet subgroup_intersection(const FiniteGroup& g, std::span<const Elem> s1,
                                 std::span<const Elem> s2) {
  require_subgroup(g, s1);
  require_subgroup(g, s2);
  ElementSet a = sorted_unique(s1), b = sorted_unique(s2), out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet conjugate_subgroup(const FiniteGroup& g, Elem x, std::span<const Elem> s) {
  require_subgroup(g, s);
  if (x >= g.order()) fail(ErrorCode::kInvalidArgument, "conjugating element out of range");
  ElementSet out;
  for (Elem y : s) out.push_back(g.mul(g.mul(x, y), g.inv(x)));
  return sorted_unique(out);
}

}  // namespace arbor
