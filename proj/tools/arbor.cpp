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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arbor/arbor.h"

#ifndef ARBOR_DATA_DIR
#define ARBOR_DATA_DIR "data/examples"
#endif

namespace {

struct Options {
  std::string config;
  std::string out;
  bool timings = false;
  int radius = -1;
  std::string dot;
  std::string what = "theorem-a";
  std::string samples;
  std::vector<std::string> codes;
  int p_max = -1, q_max = -1, n_max = -1;
  std::string x, y;
  int bound = -1;
  std::string space = "z";
  std::string support = "10";
  std::string generators;
  std::string eps;
  std::string tensor;
};

using Session = std::unique_ptr<arbor_session, decltype(&arbor_session_close)>;

int fail_with(arbor_status status) {
  std::cerr << "arbor: " << arbor_last_error() << "\n";
  return arbor_status_exit_code(status);
}

// A bare name such as "sl2z" refers to a shipped example config.
std::string resolve_config(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  const fs::path shipped = fs::path(ARBOR_DATA_DIR) / (name + ".json");
  if (name.find('/') == std::string::npos && fs::exists(shipped)) return shipped.string();
  return name;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bass-Serre trees, boundary actions, hyperfiniteness witnesses and Reiter certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(arbor_version()));
  Options o;

  auto common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", o.config, "config file or shipped example name (dihedral, sl2z, psl2z)");
    if (config_required) c->required();
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_flag("--timings", o.timings, "add wall-clock timings to the report");
  };

  auto* tree = app.add_subcommand("tree", "build the truncated Bass-Serre tree");
  common(tree, true);
  tree->add_option("--radius", o.radius, "tree radius")->check(CLI::NonNegativeNumber);
  tree->add_option("--dot", o.dot, "write a Graphviz file");

  auto* check = app.add_subcommand("check", "check stabilizer hypotheses");
  common(check, true);
  check->add_option("--what", o.what, "theorem-a, acylindrical or stabilizers")
      ->check(CLI::IsMember({"theorem-a", "acylindrical", "stabilizers"}));
  check->add_option("--samples", o.samples, "enum:P,Q to enumerate codes up to prefix P and cycle Q");
  check->add_option("--code", o.codes, "explicit boundary code, repeatable");

  auto* witness = app.add_subcommand("witness", "build a hyperfiniteness witness chain");
  common(witness, true);
  witness->add_option("--p-max", o.p_max)->check(CLI::NonNegativeNumber);
  witness->add_option("--q-max", o.q_max)->check(CLI::PositiveNumber);
  witness->add_option("--n-max", o.n_max)->check(CLI::NonNegativeNumber);

  auto* equiv = app.add_subcommand("equiv", "decide orbit equivalence of two boundary codes");
  common(equiv, true);
  equiv->add_option("--x", o.x)->required();
  equiv->add_option("--y", o.y)->required();
  equiv->add_option("--bound", o.bound, "word bound of the brute-force search")->check(CLI::NonNegativeNumber);

  auto* reiter = app.add_subcommand("reiter", "optimize and certify a Reiter function");
  common(reiter, false);
  reiter->add_option("--space", o.space, "z, free:k or finite[:group]");
  reiter->add_option("--support", o.support, "N, ball:R or list:v1,v2,...");
  reiter->add_option("--generators", o.generators, "comma-separated generator names");
  reiter->add_option("--radius", o.radius, "window radius")->check(CLI::NonNegativeNumber);
  reiter->add_option("--eps", o.eps, "strict deviation bound, e.g. 1/4");

  auto* cfw = app.add_subcommand("cfw", "extract the index function from a deviation tensor");
  common(cfw, false);
  cfw->add_option("--tensor", o.tensor, "tensor JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Session session(nullptr, &arbor_session_close);
  if (!o.config.empty()) {
    arbor_session* s = nullptr;
    if (auto st = arbor_session_open_file(resolve_config(o.config).c_str(), &s); st != ARBOR_OK) {
      return fail_with(st);
    }
    session.reset(s);
    if (const char* cap = std::getenv("ARBOR_VERTEX_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(cap, &end, 10);
      if (end == cap || *end != '\0' || v == 0) {
        std::cerr << "arbor: ARBOR_VERTEX_CAP must be a positive integer\n";
        return 2;
      }
      if (auto st = arbor_set_vertex_cap(session.get(), v); st != ARBOR_OK) return fail_with(st);
    }
  }

  const auto start = std::chrono::steady_clock::now();
  char* report = nullptr;
  char* dot = nullptr;
  int exit_code = 0;
  arbor_status st = ARBOR_OK;

  if (*tree) {
    st = arbor_cmd_tree(session.get(), o.radius, !o.dot.empty(), &report, &dot, &exit_code);
  } else if (*check) {
    int p = -1, q = -1;
    if (!o.samples.empty()) {
      if (o.samples.rfind("enum:", 0) != 0 || std::sscanf(o.samples.c_str() + 5, "%d,%d", &p, &q) != 2 || p < 0 ||
          q < 0) {
        std::cerr << "arbor: --samples must look like enum:P,Q\n";
        return 2;
      }
    }
    std::vector<const char*> codes;
    for (const auto& c : o.codes) codes.push_back(c.c_str());
    st = arbor_cmd_check(session.get(), o.what.c_str(), codes.data(), codes.size(), p, q, &report, &exit_code);
  } else if (*witness) {
    st = arbor_cmd_witness(session.get(), o.p_max, o.q_max, o.n_max, &report, &exit_code);
  } else if (*equiv) {
    st = arbor_cmd_equiv(session.get(), o.x.c_str(), o.y.c_str(), o.bound, &report, &exit_code);
  } else if (*reiter) {
    st = arbor_cmd_reiter(session.get(), o.space.c_str(), o.support.c_str(),
                          o.generators.empty() ? nullptr : o.generators.c_str(), o.radius,
                          o.eps.empty() ? nullptr : o.eps.c_str(), &report, &exit_code);
  } else if (*cfw) {
    std::string text;
    try {
      text = read_file(o.tensor);
    } catch (const std::exception& e) {
      std::cerr << "arbor: " << e.what() << "\n";
      return 2;
    }
    st = arbor_cmd_cfw(text.c_str(), &report, &exit_code);
  }
  if (st != ARBOR_OK) return fail_with(st);

  std::string text(report);
  arbor_free(report);
  if (o.timings) {
    auto doc = nlohmann::ordered_json::parse(text);
    doc["timings"] = {{"wall_seconds",
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    text = doc.dump(2) + "\n";
  }
  if (dot) {
    const bool ok = write_file(o.dot, dot);
    arbor_free(dot);
    if (!ok) {
      std::cerr << "arbor: cannot write " << o.dot << "\n";
      return 2;
    }
  }
  if (o.out.empty()) {
    std::cout << text;
  } else if (!write_file(o.out, text)) {
    std::cerr << "arbor: cannot write " << o.out << "\n";
    return 2;
  }
  return exit_code;
}
