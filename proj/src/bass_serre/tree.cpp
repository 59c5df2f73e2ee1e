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
#include <deque>
#include <sstream>

#include "arbor/bass_serre.hpp"
#include "arbor/error.hpp"

namespace arbor {

TreeVertex base_vertex() { return TreeVertex{VertexType::kH, {}}; }

void validate_vertex(const Amalgam& am, const TreeVertex& v) {
  for (std::size_t i = 0; i < v.word.size(); ++i) {
    const Letter x = v.word[i];
    const Side expected = i % 2 == 0 ? Side::kA : Side::kB;
    if (x.side != expected) fail(ErrorCode::kInvalidArgument, "vertex word does not alternate from side A");
    if (x.rep >= am.index(x.side)) fail(ErrorCode::kInvalidArgument, "vertex letter out of range");
    if (i > 0 && x.trivial()) fail(ErrorCode::kInvalidArgument, "vertex word backtracks");
  }
  const VertexType expected = v.word.size() % 2 == 0 ? VertexType::kH : VertexType::kK;
  if (v.type != expected) fail(ErrorCode::kInvalidArgument, "vertex type does not match its word");
}

ReducedWord vertex_element(const Amalgam& am, const TreeVertex& v) {
  std::vector<TaggedElement> word;
  word.reserve(v.word.size());
  for (Letter x : v.word) word.push_back({x.side, am.rep_element(x)});
  return normal_form(am, word);
}

TreeVertex vertex_of(const Amalgam& am, const ReducedWord& g, VertexType type) {
  (void)am;
  const Side own = type == VertexType::kH ? Side::kA : Side::kB;
  std::vector<Letter> word = g.letters;
  // The carry lies in C and a trailing letter of the vertex's own side lies in
  // the vertex group; both are absorbed by the coset.
  if (!word.empty() && word.back().side == own) word.pop_back();
  if (type == VertexType::kK && word.empty()) return TreeVertex{type, {Letter{Side::kA, 0}}};
  if (!word.empty() && word.front().side == Side::kB) word.insert(word.begin(), Letter{Side::kA, 0});
  return TreeVertex{type, std::move(word)};
}

TreeVertex act_on_vertex(const Amalgam& am, const ReducedWord& g, const TreeVertex& v) {
  return vertex_of(am, multiply(am, g, vertex_element(am, v)), v.type);
}

bool adjacent(const TreeVertex& v, const TreeVertex& w) {
  const TreeVertex& shorter = v.word.size() < w.word.size() ? v : w;
  const TreeVertex& longer = v.word.size() < w.word.size() ? w : v;
  if (longer.word.size() != shorter.word.size() + 1 || v.type == w.type) return false;
  return std::equal(shorter.word.begin(), shorter.word.end(), longer.word.begin());
}

std::string word_string(const Amalgam& am, std::span<const Letter> word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ',';
    out += am.letter_name(word[i]);
  }
  return out;
}

std::optional<std::size_t> TruncatedTree::find(const TreeVertex& v) const {
  auto it = index.find(v);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> TruncatedTree::counts_by_distance() const {
  std::vector<std::size_t> counts(radius + 1, 0);
  for (const auto& v : vertices) ++counts[v.depth()];
  return counts;
}

std::vector<std::size_t> TruncatedTree::degrees() const {
  std::vector<std::size_t> deg(vertices.size(), 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

TruncatedTree build_tree(const Amalgam& am, std::size_t radius, std::size_t vertex_cap) {
  TruncatedTree t;
  t.radius = radius;
  t.vertices.push_back(base_vertex());
  t.index.emplace(base_vertex(), 0);
  std::size_t frontier_begin = 0;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    const std::size_t frontier_end = t.vertices.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const Side next = t.vertices[i].type == VertexType::kH ? Side::kA : Side::kB;
      const VertexType child_type = next == Side::kA ? VertexType::kK : VertexType::kH;
      const std::uint32_t first = depth == 0 ? 0 : 1;
      for (std::uint32_t r = first; r < am.index(next); ++r) {
        if (t.vertices.size() >= vertex_cap) {
          fail(ErrorCode::kCapExceeded, "tree of radius " + std::to_string(radius) +
                                            " exceeds the vertex cap of " +
                                            std::to_string(vertex_cap));
        }
        TreeVertex child{child_type, t.vertices[i].word};
        child.word.push_back(Letter{next, r});
        const std::size_t id = t.vertices.size();
        t.index.emplace(child, id);
        t.vertices.push_back(std::move(child));
        t.edges.emplace_back(i, id);
      }
    }
    frontier_begin = frontier_end;
  }
  return t;
}

TreeCheck check_tree(const Amalgam& am, const TruncatedTree& t) {
  TreeCheck out;
  const std::size_t n = t.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  bool edges_valid = true;
  for (auto [a, b] : t.edges) {
    if (a >= n || b >= n || !adjacent(t.vertices[a], t.vertices[b])) edges_valid = false;
    if (a < n && b < n) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{t.base};
  seen[t.base] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  out.connected = edges_valid && reached == n;
  out.acyclic = out.connected && t.edges.size() + 1 == n;
  out.biregular = true;
  const auto deg = t.degrees();
  for (std::size_t i = 0; i < n; ++i) {
    if (t.vertices[i].depth() >= t.radius) continue;
    const Side s = t.vertices[i].type == VertexType::kH ? Side::kA : Side::kB;
    if (deg[i] != am.index(s)) out.biregular = false;
  }
  return out;
}

std::string to_dot(const Amalgam& am, const TruncatedTree& t) {
  std::ostringstream out;
  out << "graph bass_serre {\n";
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    const auto& v = t.vertices[i];
    const std::string label = v.word.empty() ? std::string("base") : word_string(am, v.word);
    out << "  v" << i << " [label=\"" << label << "\", shape="
        << (v.type == VertexType::kH ? "ellipse" : "box") << "];\n";
  }
  for (auto [a, b] : t.edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

TreeVertex prefix_vertex(const TreeVertex& v, std::size_t len) {
  TreeVertex out{len % 2 == 0 ? VertexType::kH : VertexType::kK,
                 std::vector<Letter>(v.word.begin(), v.word.begin() + static_cast<long>(len))};
  return out;
}

}  // namespace

GeodesicPath geodesic(const TreeVertex& v, const TreeVertex& w) {
  std::size_t common = 0;
  while (common < v.word.size() && common < w.word.size() && v.word[common] == w.word[common]) {
    ++common;
  }
  GeodesicPath path;
  for (std::size_t len = v.word.size(); len > common; --len) path.vertices.push_back(prefix_vertex(v, len));
  for (std::size_t len = common; len <= w.word.size(); ++len) path.vertices.push_back(prefix_vertex(w, len));
  return path;
}

GeodesicPath geodesic(const TruncatedTree& t, const TreeVertex& v, const TreeVertex& w) {
  if (!t.find(v) || !t.find(w)) fail(ErrorCode::kInvalidArgument, "vertex not in the truncated tree");
  return geodesic(v, w);
}

}  // namespace arbor
