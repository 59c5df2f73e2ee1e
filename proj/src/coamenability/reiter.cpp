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
#include <set>

#include "arbor/coamenability.hpp"

namespace arbor {

void ReiterCertificate::verify(const SchreierWindow& w) const {
  std::map<std::size_t, Rational> weights;
  for (const auto& [label, weight] : p) {
    auto v = w.find(label);
    if (!v) fail(ErrorCode::kVerification, "certificate vertex " + label + " is not in the window");
    weights[*v] = weight;
  }
  std::vector<std::size_t> gens;
  for (const auto& name : generators) {
    auto it = std::find(w.generators.begin(), w.generators.end(), name);
    if (it == w.generators.end()) fail(ErrorCode::kVerification, "unknown generator " + name);
    gens.push_back(static_cast<std::size_t>(it - w.generators.begin()));
  }
  const Deviation d = window_deviation(w, ProbVector<std::size_t>::make(std::move(weights)), gens);
  if (d.max != max_deviation || d.per_generator != per_generator) {
    fail(ErrorCode::kVerification, "recomputed deviation " + to_string(d.max) +
                                       " differs from the certified " + to_string(max_deviation));
  }
  if (epsilon && !(max_deviation < *epsilon)) {
    fail(ErrorCode::kVerification, "deviation " + to_string(max_deviation) + " is not below " +
                                       to_string(*epsilon));
  }
}

namespace {

ReiterCertificate make_certificate(const SchreierWindow& w, const ProbVector<std::size_t>& p,
                                   std::span<const std::size_t> generators) {
  ReiterCertificate cert;
  for (std::size_t s : generators) cert.generators.push_back(w.generators.at(s));
  for (const auto& [v, weight] : p.weights()) cert.p.emplace(w.vertices[v], weight);
  const Deviation d = window_deviation(w, p, generators);
  cert.max_deviation = d.max;
  cert.per_generator = d.per_generator;
  return cert;
}

}  // namespace

ReiterLpResult reiter_lp(const SchreierWindow& w, std::span<const std::size_t> generators,
                         std::span<const std::size_t> support) {
  if (support.empty()) fail(ErrorCode::kInvalidArgument, "empty support");
  if (generators.empty()) fail(ErrorCode::kInvalidArgument, "empty generating set");
  const std::set<std::size_t> supp(support.begin(), support.end());
  for (std::size_t v : supp) {
    if (v >= w.vertices.size()) fail(ErrorCode::kInvalidArgument, "support vertex out of range");
    for (std::size_t s : generators) {
      if (s >= w.generators.size()) fail(ErrorCode::kInvalidArgument, "generator out of range");
      if (!w.edges[s][v]) {
        fail(ErrorCode::kWindowEscape, "support vertex " + w.vertices[v] +
                                           " leaves the window under generator " + w.generators[s]);
      }
    }
  }

  // Variables: p_v for v in the support, then e_{s,u} per generator and per
  // vertex u of supp + s.supp, then t.
  std::map<std::size_t, std::size_t> pvar;
  for (std::size_t v : supp) pvar.emplace(v, pvar.size());
  LinearProgram lp;
  std::size_t nvars = pvar.size();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> budget_rows;
  for (std::size_t s : generators) {
    std::map<std::size_t, std::optional<std::size_t>> preimage;  // u -> v with s.v = u
    for (std::size_t u : supp) preimage.emplace(u, std::nullopt);
    for (std::size_t v : supp) preimage[*w.edges[s][v]] = v;
    std::vector<std::pair<std::size_t, Rational>> budget;
    for (const auto& [u, v] : preimage) {
      const std::size_t e = nvars++;
      std::vector<std::pair<std::size_t, Rational>> diff;
      if (supp.count(u)) diff.emplace_back(pvar.at(u), Rational(1));
      if (v) diff.emplace_back(pvar.at(*v), Rational(-1));
      for (int sign : {1, -1}) {
        std::vector<std::pair<std::size_t, Rational>> row;
        for (const auto& [c, k] : diff) row.emplace_back(c, sign * k);
        row.emplace_back(e, Rational(-1));
        lp.rows.push_back(std::move(row));
        lp.senses.push_back(RowSense::kLessEqual);
        lp.rhs.emplace_back(0);
      }
      budget.emplace_back(e, Rational(1));
    }
    budget_rows.push_back(std::move(budget));
  }
  const std::size_t tvar = nvars++;
  for (auto& row : budget_rows) {
    row.emplace_back(tvar, Rational(-1));
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::kLessEqual);
    lp.rhs.emplace_back(0);
  }
  std::vector<std::pair<std::size_t, Rational>> total;
  for (const auto& [v, c] : pvar) total.emplace_back(c, Rational(1));
  lp.rows.push_back(std::move(total));
  lp.senses.push_back(RowSense::kEqual);
  lp.rhs.emplace_back(1);
  lp.objective.assign(nvars, Rational(0));
  lp.objective[tvar] = 1;

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::kOptimal) {
    fail(ErrorCode::kInternal, "Reiter linear program did not reach an optimum");
  }
  std::map<std::size_t, Rational> weights;
  for (const auto& [v, c] : pvar) weights.emplace(v, sol.x[c]);

  ReiterLpResult out;
  out.p = ProbVector<std::size_t>::make(std::move(weights));
  out.certificate = make_certificate(w, out.p, generators);
  out.value = out.certificate.max_deviation;
  out.pivots = sol.pivots;
  if (out.value != sol.value) {
    fail(ErrorCode::kVerification, "exact recomputation " + to_string(out.value) +
                                       " disagrees with the LP value " + to_string(sol.value));
  }
  out.certificate.verify(w);
  return out;
}

ReiterCertificate check_uniform_coamenable(const FiniteGroup& g, std::span<const Elem> subgroup,
                                           std::span<const Elem> generators, const Rational& eps) {
  if (sgn(eps) <= 0) {
    fail(ErrorCode::kInvalidArgument, "epsilon must be positive: the Reiter bound is strict");
  }
  const SchreierWindow w = coset_window(g, subgroup, generators);
  std::vector<std::size_t> all(w.vertices.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  std::vector<std::size_t> gens(generators.size());
  for (std::size_t s = 0; s < gens.size(); ++s) gens[s] = s;
  ReiterCertificate cert = make_certificate(w, ProbVector<std::size_t>::uniform(all), gens);
  cert.epsilon = eps;
  cert.verify(w);
  return cert;
}

}  // namespace arbor
