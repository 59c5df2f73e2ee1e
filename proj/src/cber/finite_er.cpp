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
#include <numeric>
#include <set>

#include "arbor/cber.hpp"
#include "arbor/error.hpp"

namespace arbor {

FinitePointSet::FinitePointSet(std::vector<BoundaryCode> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!index_.emplace(points_[i], i).second) {
      fail(ErrorCode::kInvalidArgument, "duplicate point in point set");
    }
  }
}

std::optional<std::size_t> FinitePointSet::find(const BoundaryCode& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteER FiniteER::identity(std::size_t n) {
  std::vector<std::size_t> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  return FiniteER(std::move(rep));
}

FiniteER FiniteER::full(std::size_t n) { return FiniteER(std::vector<std::size_t>(n, 0)); }

std::size_t FiniteER::class_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < rep_.size(); ++i) count += rep_[i] == i;
  return count;
}

std::vector<Subset> FiniteER::classes() const {
  std::vector<Subset> out;
  std::vector<std::size_t> slot(rep_.size());
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i] == i) {
      slot[i] = out.size();
      out.emplace_back();
    }
    out[slot[rep_[i]]].push_back(i);
  }
  return out;
}

bool FiniteER::subset_of(const FiniteER& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < rep_.size(); ++i) {
    if (!other.related(i, rep_[i])) return false;
  }
  return true;
}

UnionFind::UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

std::size_t UnionFind::find(std::size_t i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool UnionFind::unite(std::size_t i, std::size_t j) {
  i = find(i);
  j = find(j);
  if (i == j) return false;
  // The smaller root survives, so roots are least class elements.
  if (j < i) std::swap(i, j);
  parent_[j] = i;
  return true;
}

FiniteER UnionFind::finish() {
  std::vector<std::size_t> rep(parent_.size());
  for (std::size_t i = 0; i < parent_.size(); ++i) rep[i] = find(i);
  return FiniteER(std::move(rep));
}

namespace {

void check_subset(const FiniteER& e, std::span<const std::size_t> a) {
  for (std::size_t x : a) {
    if (x >= e.size()) fail(ErrorCode::kInvalidArgument, "subset index out of range");
  }
}

}  // namespace

Subset saturation(const FiniteER& e, std::span<const std::size_t> a) {
  check_subset(e, a);
  std::set<std::size_t> reps;
  for (std::size_t x : a) reps.insert(e.class_rep(x));
  Subset out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (reps.count(e.class_rep(i))) out.push_back(i);
  }
  return out;
}

FiniteER restrict(const FiniteER& e, std::span<const std::size_t> a) {
  check_subset(e, a);
  std::vector<std::size_t> labels;
  labels.reserve(a.size());
  for (std::size_t x : a) labels.push_back(e.class_rep(x));
  return FiniteER::from_labels<std::size_t>(labels);
}

Subset transversal(const FiniteER& e) {
  Subset out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.class_rep(i) == i) out.push_back(i);
  }
  return out;
}

Subset glue_transversals(std::span<const TransversalPiece> pieces, const FiniteER& e) {
  std::vector<bool> covered(e.size(), false);
  for (const auto& piece : pieces) {
    check_subset(e, piece.domain);
    for (std::size_t x : piece.domain) covered[x] = true;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    fail(ErrorCode::kInvalidArgument, "pieces do not cover the point set");
  }

  std::vector<bool> claimed(e.size(), false);
  Subset out;
  for (const auto& piece : pieces) {
    check_subset(e, piece.transversal);
    const Subset sat = saturation(e, piece.domain);
    std::vector<bool> fresh(e.size(), false);
    for (std::size_t x : sat) {
      if (!claimed[x]) fresh[x] = true;
    }
    for (std::size_t t : piece.transversal) {
      if (fresh[t]) out.push_back(t);
    }
    for (std::size_t x : sat) claimed[x] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ReductionWitness::validate() const {
  if (f.size() != source.size()) return false;
  for (std::size_t y : f) {
    if (y >= target.size()) return false;
  }
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      if (source.related(x, y) != target.related(f[x], f[y])) return false;
    }
  }
  return true;
}

QuotientReduction quotient_reduction(const FiniteER& e_n, const FiniteER& e_mn) {
  if (e_n.size() != e_mn.size()) fail(ErrorCode::kInvalidArgument, "relations on different point sets");
  if (!e_n.subset_of(e_mn)) fail(ErrorCode::kInvalidArgument, "E_N is not contained in E_MN");
  QuotientReduction out;
  out.representatives = transversal(e_n);
  out.induced = restrict(e_mn, out.representatives);
  std::vector<std::size_t> slot(e_n.size());
  for (std::size_t k = 0; k < out.representatives.size(); ++k) slot[out.representatives[k]] = k;
  out.witness.f.resize(e_n.size());
  for (std::size_t x = 0; x < e_n.size(); ++x) out.witness.f[x] = slot[e_n.class_rep(x)];
  out.witness.source = e_mn;
  out.witness.target = out.induced;
  return out;
}

}  // namespace arbor
