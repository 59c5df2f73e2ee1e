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
#include <cctype>
#include <map>

#include "arbor/bass_serre.hpp"
#include "arbor/error.hpp"

namespace arbor {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const char* kAlternationRule =
    "letters must alternate between H-side and K-side representatives, so the cycle "
    "length must be even";

}  // namespace

LetterSequence LetterSequence::make(std::vector<Letter> prefix, std::vector<Letter> cycle) {
  if (cycle.empty()) fail(ErrorCode::kParse, "cycle must be nonempty");
  if (cycle.size() % 2 != 0) fail(ErrorCode::kParse, kAlternationRule);
  std::vector<Letter> unrolled = prefix;
  unrolled.insert(unrolled.end(), cycle.begin(), cycle.end());
  unrolled.push_back(cycle.front());
  for (std::size_t i = 1; i < unrolled.size(); ++i) {
    if (unrolled[i].side == unrolled[i - 1].side) fail(ErrorCode::kParse, kAlternationRule);
  }
  for (std::size_t i = 1; i < unrolled.size(); ++i) {
    if (unrolled[i].trivial()) {
      fail(ErrorCode::kParse,
           "sequence backtracks: only the first letter may be the identity representative");
    }
  }

  const std::size_t q = cycle.size();
  for (std::size_t d = 2; d <= q; d += 2) {
    if (q % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < q && periodic; ++i) periodic = cycle[i] == cycle[i % d];
    if (periodic) {
      cycle.resize(d);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }

  LetterSequence out;
  out.prefix_ = std::move(prefix);
  out.cycle_ = std::move(cycle);
  return out;
}

LetterSequence LetterSequence::shifted(std::size_t k) const {
  if (k <= prefix_.size()) {
    return make(std::vector<Letter>(prefix_.begin() + static_cast<long>(k), prefix_.end()), cycle_);
  }
  std::vector<Letter> cycle = cycle_;
  std::rotate(cycle.begin(), cycle.begin() + static_cast<long>((k - prefix_.size()) % cycle.size()),
              cycle.end());
  return make({}, std::move(cycle));
}

BoundaryCode BoundaryCode::from_sequence(LetterSequence seq) {
  if (seq.start_side() != Side::kA) {
    fail(ErrorCode::kParse, "a boundary code starts with an H-side representative");
  }
  return BoundaryCode(std::move(seq));
}

BoundaryCode BoundaryCode::make(std::vector<Letter> prefix, std::vector<Letter> cycle) {
  return from_sequence(LetterSequence::make(std::move(prefix), std::move(cycle)));
}

namespace {

std::string join_letters(const Amalgam& am, const std::vector<Letter>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out += ',';
    out += am.letter_name(letters[i]);
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string to_string(const Amalgam& am, const LetterSequence& x) {
  return "prefix=" + join_letters(am, x.prefix()) + ";cycle=" + join_letters(am, x.cycle());
}

std::string to_string(const Amalgam& am, const BoundaryCode& x) {
  return to_string(am, x.sequence());
}

BoundaryCode parse_code(const Amalgam& am, std::string_view text) {
  std::optional<std::string_view> prefix_text, cycle_text;
  std::string_view rest = text;
  while (!trim(rest).empty()) {
    auto semi = rest.find(';');
    std::string_view part = trim(rest.substr(0, semi));
    auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::kParse, "code '" + std::string(text) + "': expected key=value in '" +
                                  std::string(part) + "'");
    }
    std::string_view key = trim(part.substr(0, eq));
    std::string_view value = part.substr(eq + 1);
    if (key == "prefix") {
      prefix_text = value;
    } else if (key == "cycle") {
      cycle_text = value;
    } else {
      fail(ErrorCode::kParse, "code '" + std::string(text) + "': unknown key '" + std::string(key) + "'");
    }
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  if (!cycle_text) fail(ErrorCode::kParse, "code '" + std::string(text) + "': missing cycle=");

  const auto prefix_names = split_list(prefix_text.value_or(""));
  const auto cycle_names = split_list(*cycle_text);
  if (cycle_names.size() % 2 != 0) {
    fail(ErrorCode::kParse, "code '" + std::string(text) + "': " + kAlternationRule);
  }
  auto resolve = [&](std::string_view name, std::size_t position) {
    const Side s = position % 2 == 0 ? Side::kA : Side::kB;
    auto r = am.find_letter(s, name);
    if (!r) {
      fail(ErrorCode::kParse, "code '" + std::string(text) + "': '" + std::string(name) +
                                  "' at position " + std::to_string(position) + " is not a " +
                                  (s == Side::kA ? "H" : "K") + "-side transversal representative");
    }
    return Letter{s, *r};
  };
  std::vector<Letter> prefix, cycle;
  std::size_t pos = 0;
  for (auto name : prefix_names) prefix.push_back(resolve(name, pos++));
  for (auto name : cycle_names) cycle.push_back(resolve(name, pos++));
  try {
    return BoundaryCode::make(std::move(prefix), std::move(cycle));
  } catch (const Error& e) {
    fail(ErrorCode::kParse, "code '" + std::string(text) + "': " + e.what());
  }
}

void validate_letters(const Amalgam& am, const LetterSequence& x) {
  auto check = [&](const std::vector<Letter>& letters) {
    for (Letter l : letters) {
      if (l.rep >= am.index(l.side)) fail(ErrorCode::kInvalidArgument, "letter out of range");
    }
  };
  check(x.prefix());
  check(x.cycle());
}

GeodesicPath code_truncate(const BoundaryCode& x, std::size_t n) {
  GeodesicPath path;
  TreeVertex v = base_vertex();
  path.vertices.push_back(v);
  for (std::size_t k = 0; k < n; ++k) {
    v.word.push_back(x.at(k));
    v.type = v.word.size() % 2 == 0 ? VertexType::kH : VertexType::kK;
    path.vertices.push_back(v);
  }
  return path;
}

BoundaryCode geodesic_to_code(std::vector<Letter> prefix, std::vector<Letter> cycle) {
  return BoundaryCode::make(std::move(prefix), std::move(cycle));
}

LetterSequence raw_shift(const LetterSequence& x) { return x.shifted(1); }

LetterSequence act_on_sequence(const Amalgam& am, const ReducedWord& g, const LetterSequence& x) {
  const Side root = x.start_side();
  ReducedWord state = g;
  std::size_t k = 0;

  // Junction: absorb letters of x until the top letter is one of x's. Every
  // iteration that does not finish cancels one letter of g, except for an
  // identity first letter.
  const std::size_t junction_bound = g.letters.size() + 2;
  for (std::size_t steps = 0;; ++steps) {
    if (steps >= junction_bound) fail(ErrorCode::kInternal, "junction phase did not terminate");
    const Letter xl = x.at(k++);
    append(am, state, TaggedElement{xl.side, am.rep_element(xl)});
    if (!state.letters.empty() && state.letters.back().side == xl.side) break;
  }

  // Carry phase: c . x_k = x'_k . c'. States (cycle position, carry) repeat
  // within |cycle| * |C| steps of entering the periodic part.
  std::vector<Letter> out = std::move(state.letters);
  Elem carry = state.carry;
  const std::size_t p = x.prefix().size();
  const std::size_t q = x.cycle().size();
  std::map<std::pair<std::size_t, Elem>, std::size_t> seen;
  std::size_t cycle_start = 0;
  while (true) {
    if (k >= p) {
      auto [it, inserted] = seen.emplace(std::make_pair((k - p) % q, carry), out.size());
      if (!inserted) {
        cycle_start = it->second;
        break;
      }
    }
    const auto step = am.carry_through(carry, x.at(k++));
    out.push_back(step.letter);
    carry = step.carry;
  }

  std::vector<Letter> prefix(out.begin(), out.begin() + static_cast<long>(cycle_start));
  std::vector<Letter> cycle(out.begin() + static_cast<long>(cycle_start), out.end());
  const Side first = prefix.empty() ? cycle.front().side : prefix.front().side;
  if (first != root) prefix.insert(prefix.begin(), Letter{root, 0});
  return LetterSequence::make(std::move(prefix), std::move(cycle));
}

BoundaryCode act_on_boundary(const Amalgam& am, const ReducedWord& g, const BoundaryCode& x) {
  return BoundaryCode::from_sequence(act_on_sequence(am, g, x.sequence()));
}

}  // namespace arbor
