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
#include <sstream>

#include "arbor/cber.hpp"
#include "arbor/cli.hpp"
#include "arbor/coamenability.hpp"

namespace arbor {
namespace {

using nlohmann::ordered_json;

ordered_json start_report(const char* command, ordered_json inputs) {
  ordered_json r;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["results"] = ordered_json::object();
  r["toolkit"] = {{"name", kToolkitName}, {"version", kToolkitVersion}};
  return r;
}

ordered_json words(const Amalgam& am, const std::vector<ReducedWord>& ws) {
  ordered_json out = ordered_json::array();
  for (const auto& w : ws) out.push_back(to_string(am, w));
  return out;
}

ordered_json partition(const FiniteER& e) {
  ordered_json out = ordered_json::array();
  for (const auto& cls : e.classes()) out.push_back(cls);
  return out;
}

std::vector<BoundaryCode> sample_points(const Config& cfg, const SampleSpec& spec, ordered_json& inputs) {
  if (!spec.codes.empty()) {
    std::vector<BoundaryCode> out;
    for (const auto& c : spec.codes) out.push_back(parse_code(cfg.am(), c));
    inputs["codes"] = spec.codes;
    return out;
  }
  const std::size_t p = spec.p_max.value_or(cfg.limits.p_max);
  const std::size_t q = spec.q_max.value_or(cfg.limits.q_max);
  inputs["p_max"] = p;
  inputs["q_max"] = q;
  return make_sample_space(cfg.am(), p, q).points.points();
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kHypothesis:
      return 1;
    case ErrorCode::kVerification:
    case ErrorCode::kInternal:
      return 3;
    default:
      return 2;
  }
}

CommandOutput cmd_tree(const Config& cfg, std::optional<std::size_t> radius, bool want_dot) {
  const Amalgam& am = cfg.am();
  const std::size_t r = radius.value_or(cfg.limits.tree_radius);
  CommandOutput out;
  out.report = start_report("tree", {{"config", cfg.name}, {"radius", r}, {"vertex_cap", cfg.limits.vertex_cap}});
  const TruncatedTree t = build_tree(am, r, cfg.limits.vertex_cap);
  const TreeCheck check = check_tree(am, t);
  auto& res = out.report["results"];
  res["vertex_count"] = t.vertices.size();
  res["edge_count"] = t.edges.size();
  res["counts_by_distance"] = t.counts_by_distance();
  res["index"] = {{"H", am.index(Side::kA)}, {"K", am.index(Side::kB)}};
  res["connected"] = check.connected;
  res["acyclic"] = check.acyclic;
  res["biregular"] = check.biregular;
  out.exit_code = check.connected && check.acyclic && check.biregular ? 0 : 3;
  if (want_dot) out.dot = to_dot(am, t);
  return out;
}

CommandOutput cmd_check(const Config& cfg, std::string_view what, const SampleSpec& samples) {
  const Amalgam& am = cfg.am();
  CommandOutput out;
  ordered_json inputs = {{"config", cfg.name}, {"what", what}};
  if (what == "acylindrical") {
    inputs["tree_radius"] = cfg.limits.tree_radius;
    inputs["seg_length"] = 2;
    out.report = start_report("check", inputs);
    const auto rep = check_acylindricity(am, cfg.limits.tree_radius, 2, cfg.limits.vertex_cap);
    auto& res = out.report["results"];
    res["segments"] = rep.orders.size();
    res["min_order"] = rep.min_order;
    res["max_order"] = rep.max_order;
    res["edge_group_order"] = am.C().order();
    ordered_json orders = ordered_json::array();
    for (const auto& [v, k] : rep.orders) orders.push_back({{"segment_end", word_string(am, v.word)}, {"order", k}});
    res["orders"] = std::move(orders);
    return out;
  }
  if (what != "theorem-a" && what != "stabilizers") {
    fail(ErrorCode::kInvalidArgument,
         "unknown check \"" + std::string(what) + "\" (expected theorem-a, acylindrical or stabilizers)");
  }
  const auto points = sample_points(cfg, samples, inputs);
  const std::size_t bound = default_theorem_A_bound(am);
  if (what == "theorem-a") inputs["max_len"] = bound;
  out.report = start_report("check", inputs);
  auto& res = out.report["results"];
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (const auto& x : points) {
    ordered_json row = {{"code", to_string(am, x)}};
    if (what == "theorem-a") {
      const auto cert = check_theorem_A(am, x, bound);
      row["certified"] = cert.has_value();
      if (cert) {
        row["sigma_length"] = cert->sigma_length;
        row["stabilizer_order"] = cert->stabilizer.size();
        row["stabilizer"] = words(am, cert->stabilizer);
        row["chain_orders"] = cert->chain_orders;
      } else {
        all = false;
      }
    } else {
      ordered_json chain = ordered_json::array();
      for (std::size_t n = 0; n <= cfg.limits.tree_radius; ++n) {
        const auto stab = stabilizer_of_segment(am, code_truncate(x, n));
        chain.push_back({{"length", n}, {"order", stab.elements.size()}, {"elements", words(am, stab.elements)}});
      }
      row["chain"] = std::move(chain);
    }
    rows.push_back(std::move(row));
  }
  res["points"] = std::move(rows);
  if (what == "theorem-a") {
    res["all_certified"] = all;
    out.exit_code = all ? 0 : 1;
  }
  return out;
}

CommandOutput cmd_witness(const Config& cfg, std::optional<std::size_t> p_max,
                          std::optional<std::size_t> q_max, std::optional<std::size_t> n_max) {
  const Amalgam& am = cfg.am();
  const std::size_t p = p_max.value_or(cfg.limits.p_max);
  const std::size_t q = q_max.value_or(cfg.limits.q_max);
  const std::size_t n = n_max ? *n_max : cfg.limits.n_max.value_or(default_n_max(am, p, q));
  CommandOutput out;
  out.report = start_report("witness", {{"config", cfg.name}, {"p_max", p}, {"q_max", q}, {"n_max", n}});
  const SampleSpace sample = make_sample_space(am, p, q);
  const WitnessChain w = hyperfiniteness_witness(am, sample, n);
  auto& res = out.report["results"];
  ordered_json pts = ordered_json::array();
  for (const auto& x : sample.points.points()) pts.push_back(to_string(am, x));
  res["points"] = std::move(pts);
  ordered_json chain = ordered_json::array();
  for (std::size_t k = 0; k < w.chain.size(); ++k) {
    chain.push_back({{"n", k}, {"class_count", w.chain[k].class_count()}, {"classes", partition(w.chain[k])}});
  }
  res["chain"] = std::move(chain);
  res["target"] = {{"class_count", w.target.class_count()}, {"classes", partition(w.target)}};
  std::vector<std::size_t> sizes;
  for (const auto& cls : w.target.classes()) sizes.push_back(cls.size());
  res["class_sizes"] = sizes;
  res["monotone"] = w.monotone();
  res["union_equals_target"] = w.union_matches_target();
  res["stabilization_index"] = w.stabilization_index();
  out.exit_code = w.monotone() && w.union_matches_target() ? 0 : 3;
  return out;
}

CommandOutput cmd_equiv(const Config& cfg, std::string_view x_text, std::string_view y_text,
                        std::optional<std::size_t> bound) {
  const Amalgam& am = cfg.am();
  const std::size_t l = bound.value_or(cfg.limits.word_bound);
  const BoundaryCode x = parse_code(am, x_text);
  const BoundaryCode y = parse_code(am, y_text);
  CommandOutput out;
  out.report = start_report("equiv", {{"config", cfg.name}, {"x", to_string(am, x)}, {"y", to_string(am, y)}, {"bound", l}});
  const OrbitDecision d = orbit_equivalent(am, x, y);
  const auto brute = orbit_equivalent_bruteforce(am, x, y, l);
  auto& res = out.report["results"];
  res["equivalent"] = d.equivalent;
  if (d.equivalent) {
    res["shifts"] = {{"i", d.i}, {"j", d.j}};
    res["witness"] = to_string(am, d.witness);
    res["verified"] = act_on_boundary(am, d.witness, y) == x;
  } else {
    res["witness"] = nullptr;
  }
  res["bruteforce"] = {{"bound", l}, {"found", brute.has_value()},
                       {"witness", brute ? ordered_json(to_string(am, *brute)) : ordered_json(nullptr)}};
  const bool agree = brute ? d.equivalent : !(d.equivalent && d.witness.letters.size() <= l);
  res["agree"] = agree;
  out.exit_code = !agree ? 3 : d.equivalent ? 0 : 1;
  return out;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size() && v >= 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, std::string("bad ") + what + " \"" + s + "\"");
}

}  // namespace

CommandOutput cmd_reiter(const Config* cfg, const ReiterOptions& opt) {
  ordered_json inputs = {{"space", opt.space}, {"support", opt.support}, {"generators", opt.generators}};
  if (opt.radius) inputs["radius"] = *opt.radius;
  if (opt.eps) inputs["eps"] = *opt.eps;
  std::optional<Rational> eps;
  if (opt.eps) eps = parse_rational(*opt.eps);
  if (eps && sgn(*eps) <= 0) fail(ErrorCode::kInvalidArgument, "eps must be positive");

  if (opt.space == "finite" || opt.space.rfind("finite:", 0) == 0) {
    if (!cfg) fail(ErrorCode::kInvalidArgument, "the finite space needs a config");
    const Amalgam& am = cfg->am();
    const std::string name = opt.space == "finite" ? cfg->h_name : opt.space.substr(7);
    const FiniteGroup& g = cfg->group(name);
    ElementSet subgroup{0};
    if (name == cfg->h_name || name == cfg->k_name) {
      const Side s = name == cfg->h_name ? Side::kA : Side::kB;
      subgroup = am.transversal(s).subgroup;
    }
    std::vector<Elem> gens;
    if (opt.generators.empty()) {
      gens = g.generators();
    } else {
      for (const auto& word : opt.generators) gens.push_back(g.parse_word(word));
    }
    if (!eps) eps = Rational(1, 100);
    inputs["config"] = cfg->name;
    inputs["eps"] = to_string(*eps);
    CommandOutput out;
    out.report = start_report("reiter", inputs);
    const ReiterCertificate cert = check_uniform_coamenable(g, subgroup, gens, *eps);
    auto& res = out.report["results"];
    res["group"] = name;
    res["subgroup"] = ordered_json::array();
    for (Elem e : subgroup) res["subgroup"].push_back(g.name(e));
    res["value"] = to_string(cert.max_deviation);
    ordered_json p = ordered_json::object();
    for (const auto& [label, w] : cert.p) p[label] = to_string(w);
    ordered_json per = ordered_json::object();
    for (std::size_t k = 0; k < cert.generators.size(); ++k) per[cert.generators[k]] = to_string(cert.per_generator[k]);
    res["certificate"] = {{"generators", cert.generators}, {"p", p}, {"epsilon", to_string(*eps)},
                          {"max_deviation", to_string(cert.max_deviation)}, {"per_generator", per}};
    res["verified"] = true;
    return out;
  }

  std::function<SchreierWindow(std::size_t)> make_window;
  if (opt.space == "z") {
    make_window = [](std::size_t r) { return integer_window(r); };
  } else if (opt.space.rfind("free:", 0) == 0) {
    const std::size_t rank = parse_count(opt.space.substr(5), "free group rank");
    make_window = [rank](std::size_t r) { return free_group_window(rank, r); };
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown space \"" + opt.space + "\" (expected z, free:k or finite)");
  }

  // The support as labels, or a ball radius.
  std::vector<std::string> labels;
  std::optional<std::size_t> ball;
  if (opt.support.rfind("ball:", 0) == 0) {
    ball = parse_count(opt.support.substr(5), "ball radius");
  } else if (opt.support.rfind("list:", 0) == 0) {
    labels = split(opt.support.substr(5), ',');
  } else {
    const std::size_t n = parse_count(opt.support, "support size");
    if (opt.space != "z") fail(ErrorCode::kInvalidArgument, "an interval support needs the z space");
    if (n == 0) fail(ErrorCode::kInvalidArgument, "empty support");
    for (std::size_t k = 0; k < n; ++k) labels.push_back(std::to_string(k));
  }

  auto resolve = [&](const SchreierWindow& w) -> std::optional<std::vector<std::size_t>> {
    if (ball) {
      auto b = w.ball(*ball);
      for (std::size_t v : b) {
        if (!w.interior[v]) return std::nullopt;
      }
      return b;
    }
    std::vector<std::size_t> out;
    for (const auto& l : labels) {
      auto v = w.find(l);
      if (!v || !w.interior[*v]) return std::nullopt;
      out.push_back(*v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  SchreierWindow w;
  std::vector<std::size_t> support;
  if (opt.radius) {
    w = make_window(*opt.radius);
    auto s = resolve(w);
    if (!s) fail(ErrorCode::kWindowEscape, "support is not interior to the window of radius " + std::to_string(*opt.radius));
    support = *s;
  } else {
    constexpr std::size_t kMaxRadius = 64;
    for (std::size_t r = 1;; ++r) {
      if (r > kMaxRadius) fail(ErrorCode::kWindowEscape, "support does not fit in a window of radius 64");
      w = make_window(r);
      if (auto s = resolve(w)) {
        support = *s;
        break;
      }
    }
  }

  std::vector<std::size_t> gens;
  if (opt.generators.empty()) {
    for (std::size_t s = 0; s < w.generators.size(); ++s) gens.push_back(s);
  } else {
    for (const auto& name : opt.generators) {
      auto it = std::find(w.generators.begin(), w.generators.end(), name);
      if (it == w.generators.end()) fail(ErrorCode::kInvalidArgument, "unknown generator \"" + name + "\"");
      gens.push_back(static_cast<std::size_t>(it - w.generators.begin()));
    }
  }

  CommandOutput out;
  out.report = start_report("reiter", inputs);
  const ReiterLpResult lp = reiter_lp(w, gens, support);
  ReiterCertificate cert = lp.certificate;
  const bool below = !eps || cert.max_deviation < *eps;
  if (eps && below) {
    cert.epsilon = *eps;
    cert.verify(w);
  }
  auto& res = out.report["results"];
  res["window"] = {{"radius", w.distance.back()}, {"vertices", w.vertices.size()},
                   {"interior", std::count(w.interior.begin(), w.interior.end(), true)}};
  res["support_size"] = support.size();
  res["value"] = to_string(lp.value);
  ordered_json p = ordered_json::object();
  for (std::size_t v : support) p[w.vertices[v]] = to_string(lp.p.at(v));
  ordered_json per = ordered_json::object();
  for (std::size_t k = 0; k < cert.generators.size(); ++k) per[cert.generators[k]] = to_string(cert.per_generator[k]);
  res["certificate"] = {{"generators", cert.generators}, {"p", p},
                        {"epsilon", cert.epsilon ? ordered_json(to_string(*cert.epsilon)) : ordered_json(nullptr)},
                        {"max_deviation", to_string(cert.max_deviation)}, {"per_generator", per}};
  res["verified"] = true;
  if (eps) res["below_epsilon"] = below;
  out.exit_code = below ? 0 : 1;
  return out;
}

namespace {

Rational json_rational(const ordered_json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      fail(ErrorCode::kParse, "tensor " + where + ": " + e.what());
    }
  }
  fail(ErrorCode::kParse, "tensor " + where + ": expected a rational string such as \"1/2\"");
}

}  // namespace

CommandOutput cmd_cfw(std::string_view tensor_json) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(tensor_json.begin(), tensor_json.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("tensor: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kParse, "tensor: expected an object");
  for (const char* key : {"elements", "mu", "values"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      fail(ErrorCode::kParse, std::string("tensor: /") + key + " must be an array");
    }
  }
  DeviationTensor t;
  for (std::size_t k = 0; k < doc["elements"].size(); ++k) {
    if (!doc["elements"][k].is_string()) fail(ErrorCode::kParse, "tensor: /elements/" + std::to_string(k) + " must be a string");
    t.elements.push_back(doc["elements"][k].get<std::string>());
  }
  for (std::size_t k = 0; k < doc["mu"].size(); ++k) t.mu.push_back(json_rational(doc["mu"][k], "/mu/" + std::to_string(k)));
  const auto& vals = doc["values"];
  for (std::size_t i = 0; i < vals.size(); ++i) {
    t.values.emplace_back();
    for (std::size_t j = 0; j < vals[i].size(); ++j) {
      t.values[i].emplace_back();
      for (std::size_t g = 0; g < vals[i][j].size(); ++g) {
        t.values[i][j].emplace_back();
        for (std::size_t x = 0; x < vals[i][j][g].size(); ++x) {
          std::ostringstream where;
          where << "/values/" << i << "/" << j << "/" << g << "/" << x;
          t.values[i][j][g].push_back(json_rational(vals[i][j][g][x], where.str()));
        }
      }
    }
  }
  CommandOutput out;
  out.report = start_report("cfw", {{"rows", t.rows()}, {"cols", t.cols()}, {"elements", t.elements}, {"points", t.mu.size()}});
  const CfwResult r = cfw_extract(t);
  auto& res = out.report["results"];
  res["f"] = r.f;
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (std::size_t i = 0; i < r.f.size(); ++i) {
    Rational threshold(1);
    for (std::size_t k = 0; k < i; ++k) threshold /= 2;
    const bool ok = r.bad_mass[i] < threshold;
    all = all && ok;
    rows.push_back({{"i", i}, {"f", r.f[i]}, {"union_mass", to_string(r.union_mass[i])},
                    {"bad_mass", to_string(r.bad_mass[i])}, {"threshold", to_string(threshold)}, {"holds", ok}});
  }
  res["rows"] = std::move(rows);
  res["verified"] = all;
  out.exit_code = all ? 0 : 3;
  return out;
}

}  // namespace arbor
