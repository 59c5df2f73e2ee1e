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

#include <algorithm>
#include <functional>
#include <set>

#include "arbor/cber.hpp"
#include "arbor/error.hpp"
#include "oracles/models.hpp"

using namespace arbor;
using namespace arbor::testing;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arbor::Error");
  return ErrorCode::kInternal;
}

FiniteER labels(std::vector<int> l) { return FiniteER::from_labels<int>(std::span<const int>(l)); }

// Every set partition of 0..n-1 as a label vector (restricted growth strings).
std::vector<std::vector<int>> partitions(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int used) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= used; ++c) {
      cur.push_back(c);
      rec(std::max(used, c + 1));
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Subset mask_subset(unsigned mask, std::size_t n) {
  Subset s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) s.push_back(i);
  return s;
}

// Meets every class exactly once.
bool is_transversal(const FiniteER& e, const Subset& t) {
  std::vector<int> hits(e.size(), 0);
  for (auto x : t) ++hits[e.class_rep(x)];
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e.class_rep(i) == i && hits[i] != 1) return false;
  return true;
}

// Greatest index of every class of e restricted to domain, in original indices.
Subset max_transversal(const FiniteER& e, const Subset& domain) {
  std::map<std::size_t, std::size_t> best;
  for (auto x : domain) best[e.class_rep(x)] = x;
  Subset out;
  for (auto& [rep, x] : best) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

// Tail relation by direct letter comparison over a long window.
std::optional<std::pair<std::size_t, std::size_t>> tail_by_letters(const BoundaryCode& x, const BoundaryCode& y,
                                                                  std::size_t bound, std::size_t window) {
  for (std::size_t s = 0; s <= 2 * bound; ++s) {
    for (std::size_t i = s > bound ? s - bound : 0; i <= std::min(s, bound); ++i) {
      const std::size_t j = s - i;
      bool same = true;
      for (std::size_t k = 0; k < window && same; ++k) same = x.at(i + k) == y.at(j + k);
      if (same) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("point sets") {
  const Amalgam am = sl2z();
  const BoundaryCode x = parse_code(am, "cycle=a,b");
  const BoundaryCode y = parse_code(am, "cycle=a,b^2");
  const FinitePointSet s({x, y});
  CHECK(s.find(y) == 1u);
  CHECK_FALSE(s.find(parse_code(am, "prefix=1;cycle=b,a")).has_value());
  CHECK(code_of([&] { FinitePointSet({x, parse_code(am, "cycle=a,b,a,b")}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("equivalence relation algebra") {
  const FiniteER id = FiniteER::identity(6);
  const Subset a{1, 4};
  CHECK(saturation(id, a) == a);
  CHECK(transversal(id) == Subset{0, 1, 2, 3, 4, 5});

  const FiniteER all = FiniteER::full(6);
  CHECK(saturation(all, a) == Subset{0, 1, 2, 3, 4, 5});
  CHECK(transversal(all) == Subset{0});

  const FiniteER e = labels({0, 0, 1, 1, 1, 2});
  CHECK(transversal(e) == Subset{0, 2, 5});
  CHECK(e.class_count() == 3);
  CHECK(e.classes() == std::vector<Subset>{{0, 1}, {2, 3, 4}, {5}});
  CHECK(saturation(e, Subset{3}) == Subset{2, 3, 4});
  const FiniteER r = restrict(e, Subset{1, 3, 4});
  CHECK(r.classes() == std::vector<Subset>{{0}, {1, 2}});
  CHECK(id.subset_of(e));
  CHECK(e.subset_of(all));
  CHECK_FALSE(all.subset_of(e));
  CHECK(code_of([&] { (void)saturation(e, Subset{6}); }) == ErrorCode::kInvalidArgument);

  UnionFind uf(5);
  CHECK(uf.unite(4, 2));
  CHECK_FALSE(uf.unite(2, 4));
  CHECK(uf.unite(3, 4));
  CHECK(uf.finish() == labels({0, 1, 2, 2, 2}));
}

TEST_CASE("gluing transversals") {
  const FiniteER e = labels({0, 0, 1, 1});
  const Subset t = transversal(e);
  const TransversalPiece all{{0, 1, 2, 3}, {1, 3}};
  CHECK(glue_transversals(std::span(&all, 1), e) == Subset{1, 3});

  // Two overlapping pieces: the first piece wins on the classes it saturates.
  const std::vector<TransversalPiece> two{{{1}, {1}}, {{0, 2, 3}, {0, 3}}};
  CHECK(glue_transversals(two, e) == Subset{1, 3});

  std::vector<TransversalPiece> singles;
  for (std::size_t i = 0; i < 4; ++i) singles.push_back({{i}, {i}});
  CHECK(glue_transversals(singles, e) == t);

  const std::vector<TransversalPiece> partial{{{0, 1}, {0}}};
  CHECK(code_of([&] { (void)glue_transversals(partial, e); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("gluing transversals exhaustively on five points") {
  constexpr std::size_t n = 5;
  const unsigned full = (1u << n) - 1;
  std::size_t checked = 0, bad = 0;
  for (const auto& l : partitions(n)) {
    const FiniteER e = labels(l);
    for (unsigned m1 = 1; m1 <= full; ++m1) {
      for (unsigned m2 = 1; m2 <= full; ++m2) {
        if ((m1 | m2) != full) continue;
        const Subset a1 = mask_subset(m1, n), a2 = mask_subset(m2, n);
        const std::vector<TransversalPiece> pieces{{a1, max_transversal(e, a1)}, {a2, transversal(restrict(e, a2))}};
        // restrict() reindexes; map back to original indices.
        auto& t2 = const_cast<Subset&>(pieces[1].transversal);
        for (auto& x : t2) x = a2[x];
        const Subset out = glue_transversals(pieces, e);
        bad += !is_transversal(e, out);
        bad += !std::includes(out.begin(), out.end(), pieces[0].transversal.begin(), pieces[0].transversal.end());
        ++checked;
      }
    }
  }
  CHECK(checked > 10000);
  CHECK(bad == 0);
}

TEST_CASE("quotient reductions") {
  const FiniteER e = labels({0, 1, 0, 2, 1, 0});
  const QuotientReduction same_id = quotient_reduction(FiniteER::identity(6), e);
  CHECK(same_id.representatives == Subset{0, 1, 2, 3, 4, 5});
  CHECK(same_id.induced == e);
  CHECK(same_id.witness.validate());

  const QuotientReduction collapsed = quotient_reduction(e, e);
  CHECK(collapsed.representatives == Subset{0, 1, 3});
  CHECK(collapsed.induced == FiniteER::identity(3));
  CHECK(collapsed.witness.validate());

  CHECK(code_of([&] { (void)quotient_reduction(e, FiniteER::identity(6)); }) == ErrorCode::kInvalidArgument);

  ReductionWitness broken{{0, 0}, FiniteER::identity(2), FiniteER::identity(1)};
  CHECK_FALSE(broken.validate());
}

TEST_CASE("quotient by the shift relation inside the orbit relation") {
  const Amalgam am = sl2z();
  const SampleSpace sample = make_sample_space(am, 2, 4);
  const auto& pts = sample.points.points();
  REQUIRE(pts.size() >= 10);
  const std::vector<BoundaryCode> ten(pts.begin(), pts.begin() + 10);
  UnionFind shift(10), orbit(10);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      if (tail_equivalent(ten[i], ten[j])) shift.unite(i, j);
      if (orbit_equivalent(am, ten[i], ten[j]).equivalent) orbit.unite(i, j);
    }
  }
  const FiniteER e_n = shift.finish();
  const FiniteER e_mn = orbit.finish();
  REQUIRE(e_n.subset_of(e_mn));
  const QuotientReduction q = quotient_reduction(e_n, e_mn);
  CHECK(q.witness.validate());
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      CHECK(e_mn.related(i, j) == q.induced.related(q.witness.f[i], q.witness.f[j]));
    }
  }
}

TEST_CASE("tail equivalence examples") {
  const Amalgam am = sl2z();
  const BoundaryCode ab = parse_code(am, "cycle=a,b");
  CHECK(tail_equivalent(ab, ab) == std::make_pair(std::size_t{0}, std::size_t{0}));
  const LetterSequence ba = LetterSequence::make({}, {Letter{Side::kB, 1}, Letter{Side::kA, 1}});
  // Both (1, 0) and (0, 1) witness this pair; (0, 1) is least.
  CHECK(ab.sequence().shifted(1) == ba);
  CHECK(tail_equivalent(ab.sequence(), ba) == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK(tail_equivalent(ba, ab.sequence()) == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK_FALSE(tail_equivalent(ab, parse_code(am, "cycle=a,b^2")).has_value());
  const BoundaryCode late = parse_code(am, "prefix=1,b^2,a;cycle=b,a");
  CHECK(tail_equivalent(late, ab) == std::make_pair(std::size_t{2}, std::size_t{0}));
}

TEST_CASE("tail equivalence bound agrees with extended searches") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const SampleSpace sample = make_sample_space(am, 2, 4);
    const auto& pts = sample.points.points();
    std::size_t bad = 0;
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        const auto t = tail_equivalent(x, y);
        bad += t != tail_equivalent(x, y, 4);
        bad += t.has_value() != tail_by_letters(x, y, 24, 64).has_value();
        const auto s = tail_equivalent(y, x);
        bad += t.has_value() != s.has_value();
        if (t && s) {
          bad += t->first + t->second != s->first + s->second;
          bad += x.sequence().shifted(s->second) != y.sequence().shifted(s->first);
        }
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("tail equivalence is transitive on small samples") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const SampleSpace sample = make_sample_space(am, 1, 2);
    const auto& pts = sample.points.points();
    const std::size_t n = pts.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rel[i][j] = tail_equivalent(pts[i], pts[j]).has_value();
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bad += !rel[i][i];
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) bad += rel[i][j] && rel[j][k] && !rel[i][k];
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("canonical orbit codes") {
  const Amalgam d = dihedral();
  const BoundaryCode left = parse_code(d, "cycle=s,t");
  const BoundaryCode right = parse_code(d, "prefix=1;cycle=t,s");
  CHECK(canonical_orbit_code(d, left) == canonical_orbit_code(d, right));

  const Amalgam am = sl2z();
  const ReducedWord z = parse_word(am, "a^2");
  for (const char* name : kModelNames) {
    const Amalgam m = model(name);
    const SampleSpace sample = make_sample_space(m, 2, 4);
    std::size_t bad = 0;
    for (const auto& x : sample.points.points()) {
      const BoundaryCode c = canonical_orbit_code(m, x);
      bad += canonical_orbit_code(m, c) != c;
      bad += c > x;
      for (Elem h = 0; h < m.H().order(); ++h) {
        bad += canonical_orbit_code(m, act_on_boundary(m, from_element(m, {Side::kA, h}), x)) != c;
      }
      for (const auto& g : enumerate_words(m, 2)) {
        bad += !orbit_equivalent(m, act_on_boundary(m, g, x), x).equivalent;
      }
    }
    CHECK(bad == 0);
  }
  const BoundaryCode x = parse_code(am, "prefix=a;cycle=b,a");
  CHECK(canonical_orbit_code(am, x) == canonical_orbit_code(am, act_on_boundary(am, z, x)));
}

TEST_CASE("orbit decision examples") {
  const Amalgam d = dihedral();
  const BoundaryCode left = parse_code(d, "cycle=s,t");
  const BoundaryCode right = parse_code(d, "prefix=1;cycle=t,s");
  const OrbitDecision same = orbit_equivalent(d, left, left);
  CHECK(same.equivalent);
  CHECK(same.witness.letters.empty());
  const OrbitDecision ends = orbit_equivalent(d, left, right);
  CHECK(ends.equivalent);
  CHECK(to_string(d, ends.witness) == "s");
  CHECK(orbit_equivalent_bruteforce(d, left, right, 4) == ends.witness);

  const Amalgam am = sl2z();
  const BoundaryCode x = parse_code(am, "cycle=a,b");
  const BoundaryCode y = parse_code(am, "cycle=a,b^2");
  const OrbitDecision xy = orbit_equivalent(am, x, y);
  CHECK(xy.equivalent == orbit_equivalent_bruteforce(am, x, y, 4).has_value());
  if (xy.equivalent) CHECK(act_on_boundary(am, xy.witness, y) == x);
}

TEST_CASE("orbit decision agrees with brute force") {
  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const SampleSpace sample = make_sample_space(am, 1, 2);
    const auto& pts = sample.points.points();
    std::size_t bad = 0, yes = 0;
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        const OrbitDecision code = orbit_equivalent(am, x, y);
        const auto brute = orbit_equivalent_bruteforce(am, x, y, 4);
        if (brute) {
          bad += act_on_boundary(am, *brute, y) != x;
          bad += !code.equivalent;
        }
        if (code.equivalent) {
          ++yes;
          bad += act_on_boundary(am, code.witness, y) != x;
          bad += !orbit_equivalent(am, y, x).equivalent;
        }
      }
    }
    CHECK(yes > pts.size());
    CHECK(bad == 0);
  }
}

TEST_CASE("initial words spell the ray") {
  const Amalgam am = sl2z();
  const BoundaryCode x = parse_code(am, "prefix=1,b^2;cycle=a,b");
  for (std::size_t i = 0; i <= 6; ++i) {
    const TreeVertex v = code_truncate(x, i).vertices.back();
    CHECK(act_on_vertex(am, initial_word(am, x, i), i % 2 == 0 ? base_vertex() : TreeVertex{VertexType::kK, {Letter{Side::kA, 0}}}) == v);
  }
}

TEST_CASE("sample spaces") {
  const Amalgam am = sl2z();
  const SampleSpace s = make_sample_space(am, 1, 2);
  const auto& pts = s.points.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto len = [](const BoundaryCode& c) { return c.prefix().size() + c.cycle().size(); };
    CHECK(len(pts[i - 1]) <= len(pts[i]));
  }
  for (const auto& x : pts) {
    CHECK(x.prefix().size() <= 1);
    CHECK(x.cycle().size() <= 2);
    CHECK(s.points.find(BoundaryCode::from_sequence(raw_shift(raw_shift(x)))).has_value());
  }
  // Cycles a^i b^j with trivial and nontrivial prefixes.
  CHECK(s.points.find(parse_code(am, "cycle=a,b^2")).has_value());
  CHECK(s.points.find(parse_code(am, "prefix=1;cycle=b,a")).has_value());
}

TEST_CASE("witness chains") {
  const Amalgam d = dihedral();
  const SampleSpace ds = make_sample_space(d, 2, 2);
  const WitnessChain dc = hyperfiniteness_witness(d, ds, default_n_max(d, 2, 2));
  CHECK(dc.monotone());
  CHECK(dc.union_matches_target());
  CHECK(dc.chain.back().class_count() == 1);
  CHECK(dc.chain[0] == dc.chain[1]);
  const auto l = ds.points.find(parse_code(d, "cycle=s,t"));
  const auto r = ds.points.find(parse_code(d, "prefix=1;cycle=t,s"));
  REQUIRE(l);
  REQUIRE(r);
  CHECK(dc.chain[1].related(*l, *r));

  for (const char* name : kModelNames) {
    const Amalgam am = model(name);
    const SampleSpace s = make_sample_space(am, 1, 2);
    const WitnessChain c = hyperfiniteness_witness(am, s, default_n_max(am, 1, 2));
    CHECK(c.monotone());
    CHECK(c.union_matches_target());
    const auto& pts = s.points.points();
    std::vector<BoundaryCode> canon;
    for (const auto& x : pts) canon.push_back(canonical_orbit_code(am, x));
    CHECK(c.chain[0] == FiniteER::from_labels<BoundaryCode>(canon));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        CHECK(c.chain.back().related(i, j) == orbit_equivalent(am, pts[i], pts[j]).equivalent);
  }
}

TEST_CASE("hypothesis failures are reported") {
  const Amalgam am = sl2z();
  CHECK_FALSE(check_theorem_A(am, parse_code(am, "cycle=a,b"), 0).has_value());
}
