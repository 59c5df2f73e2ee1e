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

#include "arbor/bass_serre.hpp"
#include "arbor/error.hpp"

namespace arbor {

SegmentStabilizer stabilizer_of_segment(const Amalgam& am, const GeodesicPath& segment,
                                        std::size_t search_bound) {
  if (segment.vertices.empty()) fail(ErrorCode::kInvalidArgument, "empty segment");
  for (std::size_t i = 0; i < segment.vertices.size(); ++i) {
    validate_vertex(am, segment.vertices[i]);
    if (i > 0 && !adjacent(segment.vertices[i - 1], segment.vertices[i])) {
      fail(ErrorCode::kInvalidArgument, "segment is not a path");
    }
  }
  const TreeVertex& start = segment.vertices.front();
  if (start.word.size() > search_bound) {
    fail(ErrorCode::kInvalidArgument, "segment start is farther than the search bound from the base");
  }
  const ReducedWord t = vertex_element(am, start);
  const ReducedWord t_inv = invert(am, t);
  std::vector<TreeVertex> moved;
  moved.reserve(segment.vertices.size());
  for (const auto& v : segment.vertices) moved.push_back(act_on_vertex(am, t_inv, v));

  // The translated segment starts at H or K, whose stabilizer is that group.
  const Side root = start.type == VertexType::kH ? Side::kA : Side::kB;
  SegmentStabilizer out;
  out.segment = segment;
  for (Elem h = 0; h < am.group(root).order(); ++h) {
    const ReducedWord s = from_element(am, TaggedElement{root, h});
    const bool fixes = std::all_of(moved.begin(), moved.end(), [&](const TreeVertex& v) {
      return act_on_vertex(am, s, v) == v;
    });
    if (fixes) out.elements.push_back(multiply(am, multiply(am, t, s), t_inv));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::optional<TheoremACertificate> check_theorem_A(const Amalgam& am, const BoundaryCode& x,
                                                   std::size_t max_len) {
  std::vector<std::vector<ReducedWord>> chain;
  chain.reserve(max_len + 1);
  for (std::size_t n = 0; n <= max_len; ++n) {
    chain.push_back(stabilizer_of_segment(am, code_truncate(x, n)).elements);
  }
  TheoremACertificate cert;
  for (const auto& s : chain) cert.chain_orders.push_back(s.size());
  // Segment stabilizers decrease along the ray, so agreeing with the last one
  // means agreeing with every later one.
  for (std::size_t n = 0; n <= max_len; ++n) {
    if (chain[n] != chain[max_len]) continue;
    const bool fixes_ray = std::all_of(chain[n].begin(), chain[n].end(), [&](const ReducedWord& g) {
      return act_on_boundary(am, g, x) == x;
    });
    if (!fixes_ray) continue;
    cert.sigma_length = n;
    cert.stabilizer = chain[n];
    return cert;
  }
  return std::nullopt;
}

AcylindricityReport check_acylindricity(const Amalgam& am, std::size_t tree_radius,
                                        std::size_t seg_length, std::size_t vertex_cap) {
  if (seg_length > tree_radius) {
    fail(ErrorCode::kInvalidArgument, "segment length exceeds the tree radius");
  }
  const TruncatedTree t = build_tree(am, tree_radius, vertex_cap);
  AcylindricityReport report;
  report.tree_radius = tree_radius;
  report.seg_length = seg_length;
  for (const auto& v : t.vertices) {
    if (v.depth() != seg_length) continue;
    const auto stab = stabilizer_of_segment(am, geodesic(base_vertex(), v));
    report.orders.emplace_back(v, stab.elements.size());
  }
  if (!report.orders.empty()) {
    auto [lo, hi] = std::minmax_element(report.orders.begin(), report.orders.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    report.min_order = lo->second;
    report.max_order = hi->second;
  }
  return report;
}

}  // namespace arbor
