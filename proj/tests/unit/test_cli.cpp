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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "arbor/cber.hpp"
#include "arbor/cli.hpp"
#include "arbor/error.hpp"
#include "arbor/rational.hpp"

using namespace arbor;
using json = nlohmann::ordered_json;

namespace {

const std::string kSl2z = R"({
  "name": "sl2z",
  "groups": {
    "H": {"type": "cyclic", "order": 4, "generator": "a"},
    "K": {"type": "cyclic", "order": 6, "generator": "b"},
    "C": {"type": "cyclic", "order": 2, "generator": "z"}
  },
  "amalgam": {"H": "H", "K": "K", "C": "C", "embed_H": {"z": "a^2"}, "embed_K": {"z": "b^3"}},
  "limits": {"tree_radius": 3, "p_max": 1, "q_max": 2}
})";

std::string error_of(const std::string& text, ErrorCode code = ErrorCode::kParse) {
  try {
    (void)parse_config(text, "test.json");
  } catch (const Error& e) {
    CHECK(e.code() == code);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

Config shipped(const std::string& name) { return load_config(std::string(ARBOR_DATA_DIR) + "/" + name + ".json"); }

std::vector<std::string> keys(const json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

TEST_CASE("configs parse into amalgams") {
  const Config c = parse_config(kSl2z);
  CHECK(c.name == "sl2z");
  CHECK(c.group_names == std::vector<std::string>{"C", "H", "K"});
  CHECK(c.am().H().order() == 4);
  CHECK(c.am().index(Side::kB) == 3);
  CHECK(c.limits.tree_radius == 3);
  CHECK(c.limits.word_bound == 4);
  CHECK_FALSE(c.limits.n_max.has_value());

  const std::string table = R"cfg({
    "groups": {
      "V": {"type": "table", "elements": ["1", "x", "y", "xy"],
            "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]], "generators": ["x", "y"]},
      "S": {"type": "permutations", "degree": 3,
            "generators": [{"name": "r", "cycles": "(1 2 3)"}, {"name": "f", "cycles": "(1 2)"}]},
      "T": {"type": "cyclic", "order": 2, "generator": "t"}
    },
    "amalgam": {"H": "V", "K": "S", "C": "T", "embed_H": {"t": "x"}, "embed_K": {"t": "f"}}
  })cfg";
  const Config t = parse_config(table);
  CHECK(t.am().K().order() == 6);
  CHECK(t.am().index(Side::kA) == 2);
  CHECK(t.am().index(Side::kB) == 3);

  for (const char* name : {"dihedral", "sl2z", "psl2z"}) {
    const Config s = shipped(name);
    CHECK(s.name == name);
    CHECK(s.amalgam.has_value());
  }
}

TEST_CASE("config errors carry their position") {
  CHECK(error_of("{\n  \"groups\": ,\n}").find("test.json:2:") == 0);
  CHECK(error_of(replaced(kSl2z, "\"order\": 4", "\"order\": -4")) ==
        "test.json: /groups/H/order: must be a positive integer");
  CHECK(error_of(replaced(kSl2z, "\"type\": \"cyclic\", \"order\": 6", "\"type\": \"dihedral\", \"order\": 6"))
            .find("test.json: /groups/K/type: unknown group type") == 0);
  CHECK(error_of(replaced(kSl2z, "\"q_max\": 2", "\"q_max\": 2, \"speed\": 1")) ==
        "test.json: /limits/speed: unknown limit");
  CHECK(error_of(replaced(kSl2z, "\"C\": \"C\"", "\"C\": \"D\"")) == "test.json: /amalgam/C: unknown group \"D\"");
  CHECK(error_of(replaced(kSl2z, "{\"z\": \"b^3\"}", "{\"w\": \"b^3\"}")).find("test.json: /amalgam/embed_K/w:") == 0);
  CHECK(error_of(replaced(kSl2z, "{\"z\": \"b^3\"}", "{}")).find("test.json: /amalgam/embed_K:") == 0);
  CHECK(parse_config(replaced(kSl2z, "\"name\": \"sl2z\",\n", ""), "x.json").name == "x.json");
  // z of order 4 cannot map to a^2.
  const std::string bad = replaced(kSl2z, "\"order\": 2", "\"order\": 4");
  CHECK(error_of(bad, ErrorCode::kInvalidArgument).find("test.json: /amalgam") == 0);
  CHECK(error_of("[1, 2]") == "test.json: /: expected an object");
  try {
    (void)load_config("/nonexistent/file.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 2);
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::kParse) == 2);
  CHECK(exit_code_for(ErrorCode::kInvalidArgument) == 2);
  CHECK(exit_code_for(ErrorCode::kCapExceeded) == 2);
  CHECK(exit_code_for(ErrorCode::kWindowEscape) == 2);
  CHECK(exit_code_for(ErrorCode::kHypothesis) == 1);
  CHECK(exit_code_for(ErrorCode::kVerification) == 3);
  CHECK(exit_code_for(ErrorCode::kInternal) == 3);
}

TEST_CASE("tree reports") {
  const Config c = parse_config(kSl2z);
  const CommandOutput out = cmd_tree(c, std::nullopt, true);
  CHECK(out.exit_code == 0);
  CHECK(keys(out.report) == std::vector<std::string>{"command", "inputs", "results", "toolkit"});
  CHECK(out.report["command"] == "tree");
  CHECK(out.report["results"]["counts_by_distance"] == json::array({1, 2, 4, 4}));
  CHECK(out.report["results"]["vertex_count"] == 11);
  CHECK(out.report["results"]["acyclic"] == true);
  CHECK(out.report["toolkit"]["version"] == kToolkitVersion);
  REQUIRE(out.dot);
  CHECK(out.dot->rfind("graph", 0) == 0);
  CHECK_FALSE(cmd_tree(c, 2, false).dot.has_value());
}

TEST_CASE("check reports") {
  const Config c = parse_config(kSl2z);
  const CommandOutput a = cmd_check(c, "theorem-a", SampleSpec{{"cycle=a,b"}, {}, {}});
  CHECK(a.exit_code == 0);
  CHECK(a.report["results"]["all_certified"] == true);
  CHECK(a.report["results"]["points"][0]["stabilizer"] == json::array({"1", "a^2"}));

  const CommandOutput sampled = cmd_check(c, "theorem-a", SampleSpec{{}, 2, 4});
  CHECK(sampled.report["results"]["all_certified"] == true);
  CHECK(sampled.report["results"]["points"].size() > 10);

  const CommandOutput acyl = cmd_check(c, "acylindrical", SampleSpec{});
  CHECK(acyl.exit_code == 0);
  CHECK(acyl.report["results"].dump().find("\"max_order\":2") != std::string::npos);

  const CommandOutput stab = cmd_check(c, "stabilizers", SampleSpec{{"cycle=a,b"}, {}, {}});
  CHECK(stab.exit_code == 0);

  try {
    (void)cmd_check(c, "frobnicate", SampleSpec{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 2);
  }
  try {
    (void)cmd_check(c, "theorem-a", SampleSpec{{"cycle=a"}, {}, {}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("alternate") != std::string::npos);
  }
}

TEST_CASE("witness reports") {
  const CommandOutput d = cmd_witness(shipped("dihedral"), std::nullopt, std::nullopt, std::nullopt);
  CHECK(d.exit_code == 0);
  CHECK(d.report["results"]["monotone"] == true);
  CHECK(d.report["results"]["union_equals_target"] == true);
  CHECK(d.report["results"]["target"]["class_count"] == 1);

  const CommandOutput s = cmd_witness(shipped("sl2z"), 1, 2, std::nullopt);
  CHECK(s.report["results"]["union_equals_target"] == true);
  CHECK(s.report["inputs"]["n_max"] == default_n_max(shipped("sl2z").am(), 1, 2));
}

TEST_CASE("equivalence reports") {
  const Config d = shipped("dihedral");
  const CommandOutput ends = cmd_equiv(d, "cycle=s,t", "prefix=1;cycle=t,s", std::nullopt);
  CHECK(ends.exit_code == 0);
  CHECK(ends.report["results"]["equivalent"] == true);
  CHECK(ends.report["results"]["witness"] == "s");
  CHECK(ends.report["results"]["agree"] == true);

  const Config s = shipped("sl2z");
  const CommandOutput no = cmd_equiv(s, "cycle=a,b", "cycle=a,b^2", 4);
  CHECK(no.report["results"]["agree"] == true);
  CHECK(no.exit_code == (no.report["results"]["equivalent"] == true ? 0 : 1));
}

TEST_CASE("reiter reports") {
  ReiterOptions z;
  z.support = "5";
  const CommandOutput r = cmd_reiter(nullptr, z);
  CHECK(r.exit_code == 0);
  CHECK(r.report["results"]["value"] == "2/5");
  CHECK(r.report["results"]["verified"] == true);

  z.eps = "1/2";
  CHECK(cmd_reiter(nullptr, z).exit_code == 0);
  z.eps = "2/5";
  CHECK(cmd_reiter(nullptr, z).exit_code == 1);

  ReiterOptions f;
  f.space = "free:2";
  f.support = "ball:1";
  const CommandOutput fr = cmd_reiter(nullptr, f);
  CHECK(parse_rational(fr.report["results"]["value"].get<std::string>()) > Rational(1, 4));

  ReiterOptions fin;
  fin.space = "finite";
  const Config c = shipped("sl2z");
  const CommandOutput fo = cmd_reiter(&c, fin);
  CHECK(fo.report["results"]["value"] == "0/1");

  ReiterOptions bad;
  bad.space = "hyperbolic";
  try {
    (void)cmd_reiter(nullptr, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 2);
  }
}

TEST_CASE("cfw reports") {
  const std::string tensor = R"({"elements": ["g"], "mu": ["1"],
    "values": [[[["1"]], [["1/2"]], [["0"]]], [[["1"]], [["1/2"]], [["0"]]]]})";
  const CommandOutput out = cmd_cfw(tensor);
  CHECK(out.exit_code == 0);
  CHECK(out.report["results"]["verified"] == true);
  REQUIRE(out.report["results"]["rows"].size() == 2);
  try {
    (void)cmd_cfw(R"({"elements": ["g"], "mu": ["1/2"], "values": [[[["0"]]]]})");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(exit_code_for(e.code()) == 2);
  }
}

TEST_CASE("reports survive a JSON round trip") {
  const Config c = parse_config(kSl2z);
  for (const json& report : {cmd_tree(c, 3, false).report, cmd_witness(c, 1, 2, std::nullopt).report,
                             cmd_check(c, "theorem-a", SampleSpec{{}, 1, 2}).report}) {
    const std::string text = report.dump(2);
    CHECK(json::parse(text).dump(2) == text);
    CHECK(cmd_tree(c, 3, false).report == cmd_tree(c, 3, false).report);
  }
}

TEST_CASE("command examples") {
  const Config d = shipped("dihedral");
  CHECK(cmd_tree(d, 6, false).report["results"]["counts_by_distance"] == json::array({1, 2, 2, 2, 2, 2, 2}));
  CHECK(cmd_tree(d, 0, false).report["results"]["counts_by_distance"] == json::array({1}));
  const Config s = shipped("sl2z");
  CHECK(cmd_tree(s, 4, false).report["results"]["counts_by_distance"] == json::array({1, 2, 4, 4, 8}));

  const CommandOutput same = cmd_equiv(s, "prefix=1;cycle=b,a", "prefix=1;cycle=b,a", std::nullopt);
  CHECK(same.report["results"]["equivalent"] == true);
  CHECK(same.report["results"]["witness"] == "1");

  const CommandOutput check = cmd_check(s, "theorem-a", SampleSpec{{}, 1, 2});
  CHECK(check.exit_code == 0);
  for (const auto& p : check.report["results"]["points"]) {
    CHECK(p["sigma_length"] == 1);
    CHECK(p["stabilizer_order"] == 2);
  }
  for (const auto& p : cmd_check(shipped("psl2z"), "theorem-a", SampleSpec{{}, 2, 4}).report["results"]["points"]) {
    CHECK(p["stabilizer_order"] == 1);
  }

  ReiterOptions z;
  z.support = "10";
  CHECK(cmd_reiter(nullptr, z).report["results"]["value"] == "1/5");
}
