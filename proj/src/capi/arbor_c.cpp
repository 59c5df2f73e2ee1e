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

#include "arbor/arbor.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "arbor/cli.hpp"

struct arbor_session {
  arbor::Config config;
};

namespace {

thread_local std::string last_error;

arbor_status to_status(arbor::ErrorCode code) {
  switch (code) {
    case arbor::ErrorCode::kInvalidArgument: return ARBOR_ERR_INVALID_ARGUMENT;
    case arbor::ErrorCode::kParse: return ARBOR_ERR_PARSE;
    case arbor::ErrorCode::kCapExceeded: return ARBOR_ERR_CAP_EXCEEDED;
    case arbor::ErrorCode::kNotSubgroup: return ARBOR_ERR_NOT_SUBGROUP;
    case arbor::ErrorCode::kDegenerate: return ARBOR_ERR_DEGENERATE;
    case arbor::ErrorCode::kWindowEscape: return ARBOR_ERR_WINDOW_ESCAPE;
    case arbor::ErrorCode::kHypothesis: return ARBOR_ERR_HYPOTHESIS;
    case arbor::ErrorCode::kVerification: return ARBOR_ERR_VERIFICATION;
    case arbor::ErrorCode::kInternal: return ARBOR_ERR_INTERNAL;
  }
  return ARBOR_ERR_INTERNAL;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
arbor_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return ARBOR_OK;
  } catch (const arbor::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return ARBOR_ERR_INTERNAL;
  }
}

std::optional<std::size_t> opt(int v) {
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

void require(const void* p, const char* what) {
  if (!p) arbor::fail(arbor::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

void emit(const arbor::CommandOutput& out, char** report, int* exit_code) {
  *report = copy_out(out.report.dump(2) + "\n");
  *exit_code = out.exit_code;
}

}  // namespace

extern "C" {

const char* arbor_version(void) { return arbor::kToolkitVersion; }

const char* arbor_last_error(void) { return last_error.c_str(); }

int arbor_status_exit_code(arbor_status status) {
  if (status == ARBOR_OK) return 0;
  switch (status) {
    case ARBOR_ERR_HYPOTHESIS: return 1;
    case ARBOR_ERR_VERIFICATION:
    case ARBOR_ERR_INTERNAL: return 3;
    default: return 2;
  }
}

arbor_status arbor_session_open(const char* config_json, arbor_session** out) {
  return guarded([&] {
    require(config_json, "config");
    require(out, "out");
    *out = new arbor_session{arbor::parse_config(config_json)};
  });
}

arbor_status arbor_session_open_file(const char* path, arbor_session** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new arbor_session{arbor::load_config(path)};
  });
}

void arbor_session_close(arbor_session* session) { delete session; }

arbor_status arbor_set_vertex_cap(arbor_session* session, size_t cap) {
  return guarded([&] {
    require(session, "session");
    if (cap == 0) arbor::fail(arbor::ErrorCode::kInvalidArgument, "vertex cap must be positive");
    session->config.limits.vertex_cap = cap;
  });
}

void arbor_free(void* p) { std::free(p); }

arbor_status arbor_cmd_tree(arbor_session* session, int radius, int want_dot, char** report,
                            char** dot, int* exit_code) {
  return guarded([&] {
    require(session, "session");
    require(report, "report");
    require(exit_code, "exit_code");
    auto out = arbor::cmd_tree(session->config, opt(radius), want_dot != 0);
    if (dot) *dot = out.dot ? copy_out(*out.dot) : nullptr;
    emit(out, report, exit_code);
  });
}

arbor_status arbor_cmd_check(arbor_session* session, const char* what, const char* const* codes,
                             size_t n_codes, int p_max, int q_max, char** report, int* exit_code) {
  return guarded([&] {
    require(session, "session");
    require(what, "what");
    require(report, "report");
    require(exit_code, "exit_code");
    arbor::SampleSpec spec;
    for (size_t k = 0; k < n_codes; ++k) {
      require(codes[k], "code");
      spec.codes.emplace_back(codes[k]);
    }
    spec.p_max = opt(p_max);
    spec.q_max = opt(q_max);
    emit(arbor::cmd_check(session->config, what, spec), report, exit_code);
  });
}

arbor_status arbor_cmd_witness(arbor_session* session, int p_max, int q_max, int n_max,
                               char** report, int* exit_code) {
  return guarded([&] {
    require(session, "session");
    require(report, "report");
    require(exit_code, "exit_code");
    emit(arbor::cmd_witness(session->config, opt(p_max), opt(q_max), opt(n_max)), report, exit_code);
  });
}

arbor_status arbor_cmd_equiv(arbor_session* session, const char* x, const char* y, int bound,
                             char** report, int* exit_code) {
  return guarded([&] {
    require(session, "session");
    require(x, "x");
    require(y, "y");
    require(report, "report");
    require(exit_code, "exit_code");
    emit(arbor::cmd_equiv(session->config, x, y, opt(bound)), report, exit_code);
  });
}

arbor_status arbor_cmd_reiter(arbor_session* session, const char* space, const char* support,
                              const char* generators, int radius, const char* eps, char** report,
                              int* exit_code) {
  return guarded([&] {
    require(report, "report");
    require(exit_code, "exit_code");
    arbor::ReiterOptions o;
    if (space) o.space = space;
    if (support) o.support = support;
    if (generators && *generators) {
      std::string cur;
      for (const char* c = generators;; ++c) {
        if (*c == ',' || *c == '\0') {
          if (!cur.empty()) o.generators.push_back(cur);
          cur.clear();
          if (*c == '\0') break;
        } else {
          cur += *c;
        }
      }
    }
    o.radius = opt(radius);
    if (eps) o.eps = eps;
    emit(arbor::cmd_reiter(session ? &session->config : nullptr, o), report, exit_code);
  });
}

arbor_status arbor_cmd_cfw(const char* tensor_json, char** report, int* exit_code) {
  return guarded([&] {
    require(tensor_json, "tensor");
    require(report, "report");
    require(exit_code, "exit_code");
    emit(arbor::cmd_cfw(tensor_json), report, exit_code);
  });
}

arbor_status arbor_normal_form(arbor_session* session, const char* word, char** out) {
  return guarded([&] {
    require(session, "session");
    require(word, "word");
    require(out, "out");
    const auto& am = session->config.am();
    *out = copy_out(arbor::to_string(am, arbor::parse_word(am, word)));
  });
}

arbor_status arbor_act_on_boundary(arbor_session* session, const char* g, const char* code,
                                   char** out) {
  return guarded([&] {
    require(session, "session");
    require(g, "g");
    require(code, "code");
    require(out, "out");
    const auto& am = session->config.am();
    const auto x = arbor::parse_code(am, code);
    *out = copy_out(arbor::to_string(am, arbor::act_on_boundary(am, arbor::parse_word(am, g), x)));
  });
}

}  // extern "C"
