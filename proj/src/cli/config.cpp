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
#include <fstream>
#include <sstream>

#include "arbor/cli.hpp"

namespace arbor {
namespace {

using nlohmann::ordered_json;

class Path {
 public:
  Path(std::string origin) : origin_(std::move(origin)) {}

  Path operator/(std::string_view key) const {
    Path p = *this;
    p.pointer_ += "/";
    p.pointer_ += key;
    return p;
  }
  Path operator/(std::size_t index) const { return *this / std::to_string(index); }

  [[noreturn]] void fail_here(const std::string& message, ErrorCode code = ErrorCode::kParse) const {
    fail(code, origin_ + ": " + (pointer_.empty() ? "/" : pointer_) + ": " + message);
  }

  template <class F>
  auto guard(F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      fail_here(e.what(), e.code());
    }
  }

 private:
  std::string origin_;
  std::string pointer_;
};

const ordered_json& field(const ordered_json& obj, const Path& path, const char* key) {
  if (!obj.is_object()) path.fail_here("expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) path.fail_here(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t positive(const ordered_json& v, const Path& path) {
  if (!v.is_number_integer() || v.get<long long>() <= 0) path.fail_here("must be a positive integer");
  return v.get<std::size_t>();
}

std::string text(const ordered_json& v, const Path& path) {
  if (!v.is_string()) path.fail_here("must be a string");
  return v.get<std::string>();
}

std::vector<std::string> text_list(const ordered_json& v, const Path& path) {
  if (!v.is_array()) path.fail_here("must be an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(text(v[k], path / k));
  return out;
}

GroupSpec parse_group_spec(const ordered_json& g, const Path& path) {
  const std::string type = text(field(g, path, "type"), path / "type");
  if (type == "cyclic") {
    CyclicSpec spec;
    spec.n = positive(field(g, path, "order"), path / "order");
    if (g.contains("generator")) spec.generator = text(g["generator"], path / "generator");
    return spec;
  }
  if (type == "table") {
    TableSpec spec;
    spec.names = text_list(field(g, path, "elements"), path / "elements");
    const auto& rows = field(g, path, "table");
    if (!rows.is_array()) (path / "table").fail_here("must be an array of rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Path rp = path / "table" / i;
      if (!rows[i].is_array()) rp.fail_here("must be an array");
      std::vector<Elem> row;
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        const auto& cell = rows[i][j];
        if (cell.is_number_integer() && cell.get<long long>() >= 0) {
          row.push_back(cell.get<Elem>());
        } else if (cell.is_string()) {
          auto it = std::find(spec.names.begin(), spec.names.end(), cell.get<std::string>());
          if (it == spec.names.end()) (rp / j).fail_here("unknown element name");
          row.push_back(static_cast<Elem>(it - spec.names.begin()));
        } else {
          (rp / j).fail_here("must be an element name or index");
        }
      }
      spec.table.push_back(std::move(row));
    }
    if (g.contains("generators")) spec.generators = text_list(g["generators"], path / "generators");
    return spec;
  }
  if (type == "permutations") {
    PermutationSpec spec;
    spec.degree = positive(field(g, path, "degree"), path / "degree");
    if (g.contains("order_cap")) spec.order_cap = positive(g["order_cap"], path / "order_cap");
    const auto& gens = field(g, path, "generators");
    if (!gens.is_array()) (path / "generators").fail_here("must be an array");
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Path gp = path / "generators" / k;
      spec.generator_names.push_back(text(field(gens[k], gp, "name"), gp / "name"));
      const std::string cycles = text(field(gens[k], gp, "cycles"), gp / "cycles");
      spec.generators.push_back(
          (gp / "cycles").guard([&] { return parse_cycles(cycles, spec.degree); }));
    }
    return spec;
  }
  (path / "type").fail_here("unknown group type \"" + type + "\" (expected cyclic, table or permutations)");
}

Homomorphism parse_embedding(const ordered_json& e, const Path& path, const FiniteGroup& c,
                             const FiniteGroup& target) {
  if (!e.is_object()) path.fail_here("must be an object mapping generator names to words");
  std::map<Elem, Elem> images;
  for (auto it = e.begin(); it != e.end(); ++it) {
    const Path ep = path / it.key();
    auto gen = c.find(it.key());
    if (!gen) ep.fail_here("not an element of the edge group");
    if (std::find(c.generators().begin(), c.generators().end(), *gen) == c.generators().end()) {
      ep.fail_here("not a generator of the edge group");
    }
    const std::string word = text(it.value(), ep);
    images[*gen] = ep.guard([&] { return target.parse_word(word); });
  }
  for (Elem gen : c.generators()) {
    if (!images.count(gen)) path.fail_here("no image for generator \"" + c.name(gen) + "\"");
  }
  return path.guard([&] { return make_homomorphism(c, target, images); });
}

}  // namespace

const FiniteGroup& Config::group(std::string_view name) const {
  auto it = std::lower_bound(group_names.begin(), group_names.end(), name);
  if (it == group_names.end() || *it != name) {
    fail(ErrorCode::kInvalidArgument, "unknown group \"" + std::string(name) + "\"");
  }
  return groups[static_cast<std::size_t>(it - group_names.begin())];
}

Config parse_config(std::string_view text_in, std::string_view origin) {
  const std::string where(origin);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text_in.begin(), text_in.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text_in.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text_in[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorCode::kParse, where + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                ": invalid JSON: " + e.what());
  }

  const Path root(where);
  if (!doc.is_object()) root.fail_here("expected an object");
  Config cfg;
  cfg.source = doc;
  cfg.name = doc.contains("name") ? text(doc["name"], root / "name") : where;

  const auto& groups = field(doc, root, "groups");
  if (!groups.is_object()) (root / "groups").fail_here("expected an object of named groups");
  std::map<std::string, FiniteGroup> built;
  for (auto it = groups.begin(); it != groups.end(); ++it) {
    const Path gp = root / "groups" / it.key();
    const GroupSpec spec = parse_group_spec(it.value(), gp);
    built.emplace(it.key(), gp.guard([&] { return make_group(spec); }));
  }
  for (auto& [name, g] : built) {
    cfg.group_names.push_back(name);
    cfg.groups.push_back(std::move(g));
  }

  const Path ap = root / "amalgam";
  const auto& am = field(doc, root, "amalgam");
  auto resolve = [&](const char* key) {
    const std::string name = text(field(am, ap, key), ap / key);
    if (!built.count(name)) (ap / key).fail_here("unknown group \"" + name + "\"");
    return name;
  };
  cfg.h_name = resolve("H");
  cfg.k_name = resolve("K");
  cfg.c_name = resolve("C");
  const FiniteGroup& h = cfg.group(cfg.h_name);
  const FiniteGroup& k = cfg.group(cfg.k_name);
  const FiniteGroup& c = cfg.group(cfg.c_name);
  const ordered_json empty = ordered_json::object();
  Homomorphism eh = parse_embedding(am.contains("embed_H") ? am["embed_H"] : empty, ap / "embed_H", c, h);
  Homomorphism ek = parse_embedding(am.contains("embed_K") ? am["embed_K"] : empty, ap / "embed_K", c, k);
  cfg.amalgam = ap.guard([&] { return Amalgam::make(h, k, c, eh, ek); });

  if (doc.contains("limits")) {
    const auto& lim = doc["limits"];
    const Path lp = root / "limits";
    if (!lim.is_object()) lp.fail_here("expected an object");
    auto read = [&](const char* key, std::size_t& slot) {
      if (lim.contains(key)) slot = positive(lim[key], lp / key);
    };
    read("tree_radius", cfg.limits.tree_radius);
    read("vertex_cap", cfg.limits.vertex_cap);
    read("word_bound", cfg.limits.word_bound);
    read("p_max", cfg.limits.p_max);
    read("q_max", cfg.limits.q_max);
    read("lp_denominator", cfg.limits.lp_denominator);
    if (lim.contains("n_max") && !lim["n_max"].is_null()) cfg.limits.n_max = positive(lim["n_max"], lp / "n_max");
    for (auto it = lim.begin(); it != lim.end(); ++it) {
      static const char* known[] = {"tree_radius", "vertex_cap", "word_bound", "p_max",
                                    "q_max",       "n_max",      "lp_denominator"};
      if (std::none_of(std::begin(known), std::end(known), [&](const char* k2) { return it.key() == k2; })) {
        (lp / it.key()).fail_here("unknown limit");
      }
    }
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kInvalidArgument, "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace arbor
