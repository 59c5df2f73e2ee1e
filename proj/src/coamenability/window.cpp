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

#include <deque>
#include <unordered_map>

#include "arbor/coamenability.hpp"

namespace arbor {

std::optional<std::size_t> SchreierWindow::find(std::string_view label) const {
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v] == label) return v;
  }
  return std::nullopt;
}

std::vector<std::size_t> SchreierWindow::ball(std::size_t r) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (distance[v] <= r) out.push_back(v);
  }
  return out;
}

SchreierWindow build_window(std::string root, std::vector<std::string> generators,
                            const StepFn& step, std::size_t radius) {
  SchreierWindow w;
  w.generators = std::move(generators);
  std::unordered_map<std::string, std::size_t> index;
  index.emplace(root, 0);
  w.vertices.push_back(std::move(root));
  w.distance.push_back(0);
  for (std::size_t v = 0; v < w.vertices.size(); ++v) {
    if (w.distance[v] >= radius) continue;
    for (std::size_t s = 0; s < w.generators.size(); ++s) {
      auto next = step(w.vertices[v], s);
      if (!next || index.count(*next)) continue;
      index.emplace(*next, w.vertices.size());
      w.vertices.push_back(std::move(*next));
      w.distance.push_back(w.distance[v] + 1);
    }
  }
  w.edges.assign(w.generators.size(), std::vector<std::optional<std::size_t>>(w.vertices.size()));
  w.interior.assign(w.vertices.size(), true);
  for (std::size_t s = 0; s < w.generators.size(); ++s) {
    for (std::size_t v = 0; v < w.vertices.size(); ++v) {
      auto next = step(w.vertices[v], s);
      if (next) {
        auto it = index.find(*next);
        if (it != index.end()) w.edges[s][v] = it->second;
      }
      if (!w.edges[s][v]) w.interior[v] = false;
    }
  }
  return w;
}

SchreierWindow integer_window(std::size_t radius) {
  StepFn step = [](const std::string& label, std::size_t s) -> std::optional<std::string> {
    const long long x = std::stoll(label);
    return std::to_string(s == 0 ? x + 1 : x - 1);
  };
  return build_window("0", {"+1", "-1"}, step, radius);
}

SchreierWindow free_group_window(std::size_t rank, std::size_t radius) {
  if (rank == 0 || rank > 26) fail(ErrorCode::kInvalidArgument, "free group rank must be in 1..26");
  std::vector<std::string> gens;
  for (std::size_t k = 0; k < rank; ++k) {
    gens.push_back(std::string(1, static_cast<char>('a' + k)));
    gens.push_back(std::string(1, static_cast<char>('A' + k)));
  }
  StepFn step = [](const std::string& label, std::size_t s) -> std::optional<std::string> {
    const char letter = static_cast<char>(s % 2 == 0 ? 'a' + s / 2 : 'A' + s / 2);
    const char inverse = static_cast<char>(s % 2 == 0 ? 'A' + s / 2 : 'a' + s / 2);
    std::string word = label == "1" ? "" : label;
    // Left multiplication by the generator.
    if (!word.empty() && word.front() == inverse) {
      word.erase(word.begin());
    } else {
      word.insert(word.begin(), letter);
    }
    return word.empty() ? "1" : word;
  };
  return build_window("1", std::move(gens), step, radius);
}

SchreierWindow coset_window(const FiniteGroup& g, std::span<const Elem> subgroup,
                            std::span<const Elem> generators) {
  const CosetPartition part = left_cosets(g, subgroup);
  std::vector<std::string> names;
  for (Elem s : generators) {
    if (s >= g.order()) fail(ErrorCode::kInvalidArgument, "generator out of range");
    names.push_back(g.name(s));
  }
  std::vector<Elem> gens(generators.begin(), generators.end());
  StepFn step = [&g, &part, gens](const std::string& label, std::size_t s) -> std::optional<std::string> {
    const Elem x = *g.find(label);
    const Elem y = g.mul(gens[s], x);
    return g.name(part.transversal.reps[part.coset_of[y]]);
  };
  return build_window(g.name(0), std::move(names), step, g.order());
}

Deviation window_deviation(const SchreierWindow& w, const ProbVector<std::size_t>& p,
                           std::span<const std::size_t> generators) {
  Deviation out;
  for (std::size_t s : generators) {
    if (s >= w.generators.size()) fail(ErrorCode::kInvalidArgument, "generator out of range");
    std::map<std::size_t, Rational> moved;
    for (const auto& [v, weight] : p.weights()) {
      if (v >= w.vertices.size()) fail(ErrorCode::kInvalidArgument, "vertex out of range");
      const auto image = w.edges[s][v];
      if (!image) {
        fail(ErrorCode::kWindowEscape, "mass at " + w.vertices[v] +
                                           " escapes the window under generator " + w.generators[s]);
      }
      moved[*image] += weight;
    }
    out.per_generator.push_back(l1_distance(p.weights(), moved));
    if (out.per_generator.back() > out.max) out.max = out.per_generator.back();
  }
  return out;
}

}  // namespace arbor
