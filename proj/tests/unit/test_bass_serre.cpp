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

#include <set>

#include "arbor/bass_serre.hpp"
#include "arbor/cber.hpp"
#include "arbor/error.hpp"
#include "oracles/matrices.hpp"
#include "oracles/models.hpp"

using namespace arbor;
using namespace arbor::testing;

namespace {

Letter A(std::uint32_t r) { return Letter{Side::kA, r}; }
Letter B(std::uint32_t r) { return Letter{Side::kB, r}; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arbor::Error");
  return ErrorCode::kInternal;
}

// Matrices of the vertex group of the given type.
std::set<Mat> vertex_group(const Amalgam& am, const MatrixModel& mm, VertexType t) {
  const Side s = t == VertexType::kH ? Side::kA : Side::kB;
  std::set<Mat> out;
  for (Elem x = 0; x < am.group(s).order(); ++x) out.insert(mm.eval(am, {{s, x}}));
  return out;
}

}  // namespace

TEST_CASE("tree sizes") {
  const TruncatedTree d = build_tree(dihedral(), 4);
  CHECK(d.vertices.size() == 9);
  for (std::size_t deg : d.degrees()) CHECK(deg <= 2);

  const TruncatedTree s = build_tree(sl2z(), 4);
  CHECK(s.counts_by_distance() == std::vector<std::size_t>{1, 2, 4, 4, 8});
  CHECK(s.vertices.size() == 19);

  for (const char* name : kModelNames) {
    const TruncatedTree t = build_tree(model(name), 0);
    CHECK(t.vertices.size() == 1);
    CHECK(t.edges.empty());
  }
  CHECK(code_of([] { (void)build_tree(sl2z(), 10, 50); }) == ErrorCode::kCapExceeded);
}

TEST_CASE("trees are connected, acyclic and biregular") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    for (std::size_t r = 0; r <= 8; ++r) {
      const TruncatedTree t = build_tree(am, r);
      const TreeCheck c = check_tree(am, t);
      CHECK(c.connected);
      CHECK(c.acyclic);
      CHECK(c.biregular);
      CHECK(t.edges.size() + 1 == t.vertices.size());
      for (const auto& v : t.vertices) validate_vertex(am, v);
    }
  }
}

TEST_CASE("vertex action examples") {
  const Amalgam d = dihedral();
  const ReducedWord s = parse_word(d, "s");
  CHECK(act_on_vertex(d, s, base_vertex()) == base_vertex());
  const TreeVertex k1{VertexType::kK, {A(0)}};
  CHECK(act_on_vertex(d, ReducedWord{}, k1) == k1);

  const Amalgam am = sl2z();
  const TreeVertex ka{VertexType::kK, {A(1)}};
  CHECK(act_on_vertex(am, parse_word(am, "a"), k1) == ka);
}

TEST_CASE("vertex action agrees with coset arithmetic in the matrix models") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const MatrixModel mm = matrix_model(name);
    const TruncatedTree t = build_tree(am, 5);
    const auto stab_h = vertex_group(am, mm, VertexType::kH);
    const auto stab_k = vertex_group(am, mm, VertexType::kK);
    std::size_t bad = 0;
    for (const auto& g : enumerate_words(am, 3)) {
      const ReducedWord g_inv = invert(am, g);
      for (std::size_t e = 0; e < t.edges.size(); e += 3) {
        const auto& v = t.vertices[t.edges[e].first];
        const auto& w = t.vertices[t.edges[e].second];
        const TreeVertex gv = act_on_vertex(am, g, v);
        bad += !adjacent(gv, act_on_vertex(am, g, w));
        bad += act_on_vertex(am, g, act_on_vertex(am, g_inv, v)) != v;
        // vertex_element(gv)^-1 * g * vertex_element(v) lies in the vertex group.
        auto word = expand(am, invert(am, vertex_element(am, gv)));
        for (auto x : expand(am, g)) word.push_back(x);
        for (auto x : expand(am, vertex_element(am, v))) word.push_back(x);
        const auto& stab = v.type == VertexType::kH ? stab_h : stab_k;
        bad += !stab.count(mm.eval(am, word));
        bad += gv.type != v.type;
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("geodesics") {
  const Amalgam am = sl2z();
  const TruncatedTree t = build_tree(am, 4);
  const TreeVertex ka{VertexType::kK, {A(1)}};
  const TreeVertex k1{VertexType::kK, {A(0)}};
  CHECK(geodesic(t, ka, ka).vertices == std::vector<TreeVertex>{ka});
  const GeodesicPath p = geodesic(t, ka, k1);
  CHECK(p.length() == 2);
  CHECK(p.vertices[1] == base_vertex());
  for (const auto& v : t.vertices) {
    if (v.depth() != 3) continue;
    const GeodesicPath g = geodesic(t, base_vertex(), v);
    CHECK(g.length() == 3);
    CHECK(g.vertices.back().word == v.word);
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
      CHECK(g.vertices[k].word == std::vector<Letter>(v.word.begin(), v.word.begin() + static_cast<long>(k)));
    }
  }
  const TreeVertex far{VertexType::kH, {A(1), B(1), A(1), B(1), A(1), B(1)}};
  CHECK(code_of([&] { (void)geodesic(t, far, ka); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("code canonicalization and truncation") {
  const BoundaryCode ab = BoundaryCode::make({}, {A(1), B(1)});
  const GeodesicPath p = code_truncate(ab, 3);
  REQUIRE(p.vertices.size() == 4);
  CHECK(p.vertices[0] == base_vertex());
  CHECK(p.vertices[1] == TreeVertex{VertexType::kK, {A(1)}});
  CHECK(p.vertices[2] == TreeVertex{VertexType::kH, {A(1), B(1)}});
  CHECK(p.vertices[3] == TreeVertex{VertexType::kK, {A(1), B(1), A(1)}});
  CHECK(code_truncate(ab, 0).vertices == std::vector<TreeVertex>{base_vertex()});

  CHECK(geodesic_to_code({}, {A(1), B(1), A(1), B(1)}) == ab);
  CHECK(geodesic_to_code({A(1), B(1)}, {A(1), B(1)}) == ab);
  CHECK(geodesic_to_code({A(1)}, {B(1), A(1)}) == ab);
  const BoundaryCode mixed = geodesic_to_code({A(0)}, {B(2), A(1), B(1), A(1)});
  CHECK(mixed.prefix() == std::vector<Letter>{A(0)});
  CHECK(mixed.cycle().size() == 4);
}

TEST_CASE("code strings") {
  const Amalgam am = sl2z();
  const BoundaryCode x = parse_code(am, "prefix=1,b^2;cycle=a,b");
  CHECK(to_string(am, x) == "prefix=1,b^2;cycle=a,b");
  CHECK(parse_code(am, to_string(am, x)) == x);
  CHECK(parse_code(am, "cycle=a,b") == BoundaryCode::make({}, {A(1), B(1)}));

  auto message = [&](const char* text) {
    try {
      (void)parse_code(am, text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      return std::string(e.what());
    }
    FAIL("expected a parse error");
    return std::string();
  };
  CHECK(message("cycle=a").find("alternate") != std::string::npos);
  CHECK(message("cycle=a,b,a").find("alternate") != std::string::npos);
  CHECK(message("prefix=a,1;cycle=a,b").find("backtracks") != std::string::npos);
  CHECK(message("cycle=1,b").find("backtracks") != std::string::npos);
  CHECK(message("cycle=a,q").find("position 1") != std::string::npos);
  CHECK(message("prefix=a").find("cycle") != std::string::npos);
}

TEST_CASE("raw shift") {
  const BoundaryCode ab = BoundaryCode::make({}, {A(1), B(1)});
  const LetterSequence s = raw_shift(ab);
  CHECK(s.start_side() == Side::kB);
  CHECK(s.at(0) == B(1));
  CHECK(s.at(1) == A(1));
  CHECK(LetterSequence::make({B(2)}, {A(1), B(1)}).shifted(1) == ab.sequence());
  CHECK(raw_shift(raw_shift(ab)) == ab.sequence());
  const BoundaryCode long_cycle = BoundaryCode::make({}, {A(1), B(1), A(1), B(2)});
  LetterSequence t = long_cycle.sequence();
  for (int k = 0; k < 4; ++k) t = raw_shift(t);
  CHECK(t == long_cycle.sequence());
}

TEST_CASE("boundary action examples") {
  const Amalgam d = dihedral();
  const BoundaryCode st = parse_code(d, "cycle=s,t");
  const BoundaryCode other_end = parse_code(d, "prefix=1;cycle=t,s");
  CHECK(act_on_boundary(d, ReducedWord{}, st) == st);
  CHECK(act_on_boundary(d, parse_word(d, "s"), other_end) == st);
  CHECK(act_on_boundary(d, parse_word(d, "s"), st) == other_end);

  const Amalgam am = sl2z();
  const BoundaryCode ab = parse_code(am, "cycle=a,b");
  const ReducedWord z = parse_word(am, "a^2");
  const BoundaryCode zx = act_on_boundary(am, z, ab);
  // z is central and fixes the base, so it fixes every vertex of the ray.
  for (std::size_t n = 0; n < 8; ++n) {
    CHECK(code_truncate(zx, n).vertices.back() == act_on_vertex(am, z, code_truncate(ab, n).vertices.back()));
  }
  CHECK(zx == ab);
}

TEST_CASE("boundary action agrees with the vertex action on truncations") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const SampleSpace sample = make_sample_space(am, 2, 4);
    std::size_t bad = 0;
    for (const auto& g : enumerate_words(am, 2)) {
      for (const auto& x : sample.points.points()) {
        const BoundaryCode gx = act_on_boundary(am, g, x);
        const std::size_t m = 2 * g.letters.size() + 2;
        for (std::size_t n = 0; n <= 6; ++n) {
          const TreeVertex far = act_on_vertex(am, g, code_truncate(x, n + m).vertices.back());
          const GeodesicPath toward = geodesic(base_vertex(), far);
          const GeodesicPath expect = code_truncate(gx, n);
          bad += toward.vertices.size() < n + 1 ||
                 !std::equal(expect.vertices.begin(), expect.vertices.end(), toward.vertices.begin());
        }
        bad += act_on_boundary(am, invert(am, g), gx) != x;
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("carry steps are exact and never backtrack") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    for (Elem c = 0; c < am.C().order(); ++c) {
      for (Side s : {Side::kA, Side::kB}) {
        const FiniteGroup& g = am.group(s);
        for (std::uint32_t r = 0; r < am.index(s); ++r) {
          const Letter x{s, r};
          const auto step = am.carry_through(c, x);
          CHECK(step.letter.side == s);
          CHECK(g.mul(am.embed(s, c), am.rep_element(x)) == g.mul(am.rep_element(step.letter), am.embed(s, step.carry)));
          if (!x.trivial()) CHECK_FALSE(step.letter.trivial());
        }
      }
    }
  }
}

TEST_CASE("segment stabilizer examples") {
  const Amalgam am = sl2z();
  const GeodesicPath base{{base_vertex()}};
  CHECK(stabilizer_of_segment(am, base).elements.size() == 4);
  const GeodesicPath edge{{base_vertex(), TreeVertex{VertexType::kK, {A(0)}}}};
  const auto e = stabilizer_of_segment(am, edge).elements;
  CHECK(e == std::vector<ReducedWord>{ReducedWord{}, parse_word(am, "a^2")});

  const TruncatedTree t = build_tree(am, 3);
  for (const auto& v : t.vertices) {
    if (v.depth() != 3) continue;
    CHECK(stabilizer_of_segment(am, geodesic(base_vertex(), v)).elements == e);
  }

  const Amalgam p = psl2z();
  const TruncatedTree pt = build_tree(p, 3);
  for (const auto& v : pt.vertices) {
    if (v.depth() == 0) continue;
    CHECK(stabilizer_of_segment(p, geodesic(base_vertex(), v)).elements.size() == 1);
  }
}

TEST_CASE("segment stabilizers form a decreasing chain of subgroups") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const TruncatedTree t = build_tree(am, 4);
    for (const auto& v : t.vertices) {
      const GeodesicPath path = geodesic(base_vertex(), v);
      const auto stab = stabilizer_of_segment(am, path).elements;
      CHECK(am.H().order() % stab.size() == 0);
      const std::set<ReducedWord> set(stab.begin(), stab.end());
      for (const auto& g : stab) {
        CHECK(set.count(invert(am, g)));
        for (const auto& h : stab) CHECK(set.count(multiply(am, g, h)));
        for (const auto& u : path.vertices) CHECK(act_on_vertex(am, g, u) == u);
      }
      if (path.length() > 0) {
        GeodesicPath shorter = path;
        shorter.vertices.pop_back();
        const auto parent = stabilizer_of_segment(am, shorter).elements;
        for (const auto& g : stab) CHECK(std::binary_search(parent.begin(), parent.end(), g));
      }
    }
  }
}

TEST_CASE("stabilizers of segments away from the base") {
  const Amalgam am = sl2z();
  const TruncatedTree t = build_tree(am, 4);
  for (const auto& v : t.vertices) {
    if (v.depth() != 2) continue;
    for (const auto& w : t.vertices) {
      if (w.depth() != 4 || !std::equal(v.word.begin(), v.word.end(), w.word.begin())) continue;
      const GeodesicPath seg = geodesic(v, w);
      const auto stab = stabilizer_of_segment(am, seg).elements;
      CHECK(stab.size() == 2);
      for (const auto& g : stab) {
        for (const auto& u : seg.vertices) CHECK(act_on_vertex(am, g, u) == u);
      }
    }
  }
  const TreeVertex deep{VertexType::kK, {A(1), B(1), A(1)}};
  CHECK(code_of([&] { (void)stabilizer_of_segment(am, GeodesicPath{{deep}}, 2); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("hypothesis certificates") {
  const Amalgam am = sl2z();
  const auto c = check_theorem_A(am, parse_code(am, "cycle=a,b"), default_theorem_A_bound(am));
  REQUIRE(c);
  CHECK(c->sigma_length == 1);
  CHECK(c->stabilizer == std::vector<ReducedWord>{ReducedWord{}, parse_word(am, "a^2")});

  const Amalgam d = dihedral();
  const auto cd = check_theorem_A(d, parse_code(d, "cycle=s,t"), default_theorem_A_bound(d));
  REQUIRE(cd);
  CHECK(cd->sigma_length == 1);
  CHECK(cd->stabilizer.size() == 1);

  const Amalgam p = psl2z();
  const SampleSpace sample = make_sample_space(p, 2, 4);
  for (const auto& x : sample.points.points()) {
    const auto cp = check_theorem_A(p, x, default_theorem_A_bound(p));
    REQUIRE(cp);
    CHECK(cp->sigma_length == 1);
    CHECK(cp->stabilizer.size() == 1);
  }
}

TEST_CASE("acylindricity reports") {
  const auto s = check_acylindricity(sl2z(), 4);
  CHECK(s.max_order == 2);
  CHECK(s.min_order == 2);
  CHECK(s.orders.size() == 4);
  CHECK(check_acylindricity(psl2z(), 4).max_order == 1);
  CHECK(check_acylindricity(dihedral(), 4).max_order == 1);
  CHECK(code_of([] { (void)check_acylindricity(sl2z(), 1, 2); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("DOT export is byte-stable") {
  const Amalgam am = sl2z();
  const std::string a = to_dot(am, build_tree(am, 3));
  const std::string b = to_dot(am, build_tree(am, 3));
  CHECK(a == b);
  CHECK(a.find("shape=box") != std::string::npos);
  CHECK(a.find("shape=ellipse") != std::string::npos);
  CHECK(a.find("label=\"base\"") != std::string::npos);
}
