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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "arbor/bass_serre.hpp"
#include "arbor/error.hpp"
#include "arbor/groups.hpp"

namespace arbor {

inline constexpr const char* kToolkitName = "arbor";
inline constexpr const char* kToolkitVersion = "0.1.0";

struct Limits {
  std::size_t tree_radius = 4;
  std::size_t vertex_cap = kDefaultVertexCap;
  std::size_t word_bound = 4;
  std::size_t p_max = 1;
  std::size_t q_max = 4;
  std::optional<std::size_t> n_max;
  std::size_t lp_denominator = 20;
};

struct Config {
  std::string name;
  std::vector<std::string> group_names;  // sorted
  std::vector<FiniteGroup> groups;       // parallel to group_names
  std::string h_name, k_name, c_name;
  std::optional<Amalgam> amalgam;
  Limits limits;
  nlohmann::ordered_json source;  // the parsed document

  const FiniteGroup& group(std::string_view name) const;
  const Amalgam& am() const { return *amalgam; }
};

// Errors carry the JSON pointer of the offending value, or the line and
// column for syntax errors.
Config parse_config(std::string_view text, std::string_view origin = "config");
Config load_config(const std::string& path);

struct CommandOutput {
  nlohmann::ordered_json report;
  int exit_code = 0;
  std::optional<std::string> dot;
};

struct SampleSpec {
  std::vector<std::string> codes;  // explicit list, used when nonempty
  std::optional<std::size_t> p_max, q_max;
};

struct ReiterOptions {
  std::string space = "z";  // z, free:k or finite
  std::string support = "10";  // N, ball:R or list:v1,v2,...
  std::vector<std::string> generators;  // empty: all
  std::optional<std::size_t> radius;
  std::optional<std::string> eps;
};

CommandOutput cmd_tree(const Config& cfg, std::optional<std::size_t> radius, bool want_dot);
CommandOutput cmd_check(const Config& cfg, std::string_view what, const SampleSpec& samples);
CommandOutput cmd_witness(const Config& cfg, std::optional<std::size_t> p_max,
                          std::optional<std::size_t> q_max, std::optional<std::size_t> n_max);
CommandOutput cmd_equiv(const Config& cfg, std::string_view x, std::string_view y,
                        std::optional<std::size_t> bound);
// cfg is needed only for the finite space.
CommandOutput cmd_reiter(const Config* cfg, const ReiterOptions& options);
CommandOutput cmd_cfw(std::string_view tensor_json);

// Exit code for a failed command: 1 for hypothesis failures, 3 for internal
// or verification failures, 2 otherwise.
int exit_code_for(ErrorCode code);

}  // namespace arbor
