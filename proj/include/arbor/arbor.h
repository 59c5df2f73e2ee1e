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

#ifndef ARBOR_ARBOR_H_
#define ARBOR_ARBOR_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arbor_status {
  ARBOR_OK = 0,
  ARBOR_ERR_INVALID_ARGUMENT = 1,
  ARBOR_ERR_PARSE = 2,
  ARBOR_ERR_CAP_EXCEEDED = 3,
  ARBOR_ERR_NOT_SUBGROUP = 4,
  ARBOR_ERR_DEGENERATE = 5,
  ARBOR_ERR_WINDOW_ESCAPE = 6,
  ARBOR_ERR_HYPOTHESIS = 7,
  ARBOR_ERR_VERIFICATION = 8,
  ARBOR_ERR_INTERNAL = 9
} arbor_status;

/* A loaded configuration: groups, amalgam and limits. */
typedef struct arbor_session arbor_session;

const char* arbor_version(void);

/* Message of the last failure on the calling thread; empty if none. */
const char* arbor_last_error(void);

/* Process exit code for a status: 0 ok, 1 hypothesis failure, 2 input
 * error, 3 internal or verification failure. */
int arbor_status_exit_code(arbor_status status);

arbor_status arbor_session_open(const char* config_json, arbor_session** out);
arbor_status arbor_session_open_file(const char* path, arbor_session** out);
void arbor_session_close(arbor_session* session);

arbor_status arbor_set_vertex_cap(arbor_session* session, size_t cap);

/* Strings returned through char** are allocated by the library and must be
 * released with arbor_free. Reports are JSON documents; *exit_code receives
 * the command's exit code (0 verified, 1 verified negative). Negative integer
 * arguments select the configured default. */
void arbor_free(void* p);

arbor_status arbor_cmd_tree(arbor_session* session, int radius, int want_dot, char** report,
                            char** dot, int* exit_code);

/* what: "theorem-a", "acylindrical" or "stabilizers". With n_codes > 0 the
 * explicit codes are checked, otherwise the (p_max, q_max) sample. */
arbor_status arbor_cmd_check(arbor_session* session, const char* what, const char* const* codes,
                             size_t n_codes, int p_max, int q_max, char** report, int* exit_code);

arbor_status arbor_cmd_witness(arbor_session* session, int p_max, int q_max, int n_max,
                               char** report, int* exit_code);

arbor_status arbor_cmd_equiv(arbor_session* session, const char* x, const char* y, int bound,
                             char** report, int* exit_code);

/* space: "z", "free:k" or "finite[:group]" (the last needs a session).
 * support: "N", "ball:R" or "list:v1,v2". generators: comma-separated names
 * or NULL for all. eps: rational string or NULL. */
arbor_status arbor_cmd_reiter(arbor_session* session, const char* space, const char* support,
                              const char* generators, int radius, const char* eps, char** report,
                              int* exit_code);

arbor_status arbor_cmd_cfw(const char* tensor_json, char** report, int* exit_code);

/* Normal form of a product of H and K elements, e.g. "b^4*a". */
arbor_status arbor_normal_form(arbor_session* session, const char* word, char** out);

/* Canonical code of g.x for a boundary code "prefix=...;cycle=...". */
arbor_status arbor_act_on_boundary(arbor_session* session, const char* g, const char* code,
                                   char** out);

#ifdef __cplusplus
}
#endif

#endif  // ARBOR_ARBOR_H_
