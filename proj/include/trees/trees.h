/*
 *   Copyright 2026 The TREES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TREES_TREES_H
#define TREES_TREES_H

/* C interface to the TREES runtime. All objects are opaque handles; every
 * function returns a trees_status and reports details through
 * trees_last_error_message(), which is thread-local. Strings returned by the
 * library stay valid until the owning handle is destroyed or the same
 * accessor is called again on it. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TREES_API
#elif defined(TREES_BUILDING_LIBRARY)
#define TREES_API __attribute__((visibility("default")))
#else
#define TREES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trees_status {
  TREES_OK = 0,
  TREES_ERR_CONFIG = 1,
  TREES_ERR_CONTRACT = 2,
  TREES_ERR_CAPACITY = 3,
  TREES_ERR_EPOCH_LIMIT = 4,
  TREES_ERR_TASK_FAILED = 5,
  TREES_ERR_PROTOCOL = 6,
  TREES_ERR_INTERNAL = 7,
  TREES_ERR_IO = 8,
  TREES_ERR_PARSE = 9,
  TREES_ERR_INVALID_ARGUMENT = 10
} trees_status;

typedef int64_t trees_word;

#define TREES_NULL ((trees_word)-1)
#define TREES_INFINITY ((trees_word)INT64_MAX)

TREES_API const char* trees_last_error_message(void);
TREES_API const char* trees_status_name(trees_status status);
TREES_API const char* trees_version(void);

/* Number of argument words per task (build-time constant). */
TREES_API size_t trees_arg_words(void);

/* ---- Built-in application runs ------------------------------------------ */

typedef struct trees_run trees_run;

/* Creates a run of a shipped program: fib, preorder, postorder, bfs, sssp,
 * mergesort, mergesort-map, fft, spin. */
TREES_API trees_status trees_run_create(const char* program, trees_run** out);
TREES_API void trees_run_destroy(trees_run* run);

/* Keys: backend (seq|par), workers, group_size, capacity, epoch_limit,
 * trace_slots (0|1), and application inputs n, src, input, size, edges,
 * seed, max_weight. Unknown keys are rejected. */
TREES_API trees_status trees_run_set_option(trees_run* run, const char* key, const char* value);

TREES_API trees_status trees_run_execute(trees_run* run);

/* Compares the finished run against the program's oracle. */
TREES_API trees_status trees_run_check(trees_run* run, int* ok, const char** detail);

TREES_API trees_status trees_run_result_text(trees_run* run, const char** text);
TREES_API trees_status trees_run_result_words(trees_run* run, const trees_word** words,
                                              size_t* count);
/* full = 1 adds backend-dependent counters. */
TREES_API trees_status trees_run_metrics_json(trees_run* run, int full, const char** json);
TREES_API trees_status trees_run_metrics_table(trees_run* run, const char** table);
TREES_API trees_status trees_run_trace_jsonl(trees_run* run, const char** jsonl);
TREES_API trees_status trees_run_write_trace(trees_run* run, const char* path);
TREES_API trees_status trees_run_halted(trees_run* run, int* halted);

typedef struct trees_metrics {
  int64_t epochs;
  int64_t map_drains;
  int64_t work_tasks;
  int64_t work_map_items;
  int64_t launched_total;
  int64_t peak_next_free_core;
  int64_t work_groups;
  int64_t atomic_ops;
  int64_t lock_ops;
  int64_t critical_path;
  double utilization;
} trees_metrics;

TREES_API trees_status trees_run_metrics(trees_run* run, trees_metrics* out);

/* Trace comparison: identical is set to 1 or 0; report describes the first
 * divergence and must be released with trees_string_free. */
TREES_API trees_status trees_compare_trace_files(const char* actual, const char* golden,
                                                 int* identical, char** report);
TREES_API void trees_string_free(char* s);

/* ---- Performance model ---------------------------------------------------- */

typedef enum trees_model_case {
  TREES_MODEL_SCALAR = 0,
  TREES_MODEL_BEST = 1,
  TREES_MODEL_PESSIMISTIC = 2,
  TREES_MODEL_WORST = 3
} trees_model_case;

typedef struct trees_model_params {
  double t1, tinf, p, w, v1, vinf;
  int depth;
} trees_model_params;

TREES_API trees_status trees_model_time(const trees_model_params* params,
                                        trees_model_case which, double* out);

/* ---- User-defined programs ----------------------------------------------- */

typedef struct trees_program trees_program;
typedef struct trees_ctx trees_ctx;
typedef struct trees_result trees_result;

/* A task body returns TREES_OK or an error to abort the run. */
typedef trees_status (*trees_task_fn)(trees_ctx* ctx, void* user);
typedef trees_status (*trees_map_fn)(trees_ctx* ctx, const trees_word* args, size_t nargs,
                                     int64_t index, void* user);

TREES_API trees_status trees_program_create(trees_program** out);
TREES_API void trees_program_destroy(trees_program* program);
/* Type ids start at 1 in registration order. */
TREES_API trees_status trees_program_add_task(trees_program* program, const char* name,
                                              trees_task_fn fn, void* user, uint32_t* type_id);
/* Map ids start at 0. */
TREES_API trees_status trees_program_add_map(trees_program* program, const char* name,
                                             trees_map_fn fn, void* user, uint32_t* map_id);
TREES_API trees_status trees_program_add_buffer(trees_program* program, const char* name,
                                                const trees_word* init, size_t count,
                                                uint32_t* buffer_id);
TREES_API trees_status trees_program_set_root(trees_program* program, uint32_t type_id,
                                              const trees_word* args, size_t nargs);

typedef struct trees_run_config {
  int parallel;        /* 0 = sequential, 1 = bulk-parallel */
  unsigned workers;    /* >= 1 */
  int64_t group_size;  /* >= 1 */
  int64_t capacity;    /* task vector slots */
  int64_t epoch_limit;
} trees_run_config;

TREES_API void trees_run_config_default(trees_run_config* cfg);
TREES_API trees_status trees_program_run(const trees_program* program,
                                         const trees_run_config* cfg, trees_result** out);
TREES_API void trees_result_destroy(trees_result* result);
TREES_API trees_status trees_result_metrics(const trees_result* result, trees_metrics* out);
TREES_API trees_status trees_result_root(const trees_result* result, trees_word* value);
TREES_API trees_status trees_result_buffer(const trees_result* result, uint32_t buffer_id,
                                           const trees_word** data, size_t* count);

/* Context accessors, valid only inside a task or map callback. Task
 * primitives (fork, join, emit, map) fail with TREES_ERR_CONTRACT inside a
 * map callback. handle_mask marks argument words that hold child handles. */
TREES_API int64_t trees_ctx_slot(const trees_ctx* ctx);
TREES_API int64_t trees_ctx_cen(const trees_ctx* ctx);
TREES_API size_t trees_ctx_nargs(const trees_ctx* ctx);
TREES_API trees_word trees_ctx_arg(const trees_ctx* ctx, size_t i);
TREES_API trees_status trees_ctx_fork(trees_ctx* ctx, uint32_t type_id, const trees_word* args,
                                      size_t nargs, uint32_t handle_mask, trees_word* handle);
TREES_API trees_status trees_ctx_join(trees_ctx* ctx, uint32_t type_id, const trees_word* args,
                                      size_t nargs, uint32_t handle_mask);
TREES_API trees_status trees_ctx_emit(trees_ctx* ctx, trees_word value);
TREES_API trees_status trees_ctx_map(trees_ctx* ctx, uint32_t map_id, const trees_word* args,
                                     size_t nargs, int64_t range);
TREES_API trees_status trees_ctx_child_result(trees_ctx* ctx, trees_word handle,
                                              trees_word* value);
TREES_API trees_status trees_ctx_buffer(trees_ctx* ctx, uint32_t buffer_id, trees_word** data,
                                        size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* TREES_TREES_H */
