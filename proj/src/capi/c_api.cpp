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

#include "trees/trees.h"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <new>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "trees/catalog.hpp"
#include "trees/error.hpp"
#include "trees/program.hpp"
#include "trees/trace_io.hpp"

namespace {

using trees::Error;
using trees::ErrorCode;

thread_local std::string g_last_error;

trees_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return TREES_ERR_CONFIG;
    case ErrorCode::contract: return TREES_ERR_CONTRACT;
    case ErrorCode::capacity: return TREES_ERR_CAPACITY;
    case ErrorCode::epoch_limit: return TREES_ERR_EPOCH_LIMIT;
    case ErrorCode::task_failure: return TREES_ERR_TASK_FAILED;
    case ErrorCode::protocol: return TREES_ERR_PROTOCOL;
    case ErrorCode::internal: return TREES_ERR_INTERNAL;
    case ErrorCode::io: return TREES_ERR_IO;
    case ErrorCode::parse: return TREES_ERR_PARSE;
  }
  return TREES_ERR_INTERNAL;
}

ErrorCode code_of(trees_status s) {
  switch (s) {
    case TREES_ERR_CONFIG: return ErrorCode::config;
    case TREES_ERR_CONTRACT: return ErrorCode::contract;
    case TREES_ERR_CAPACITY: return ErrorCode::capacity;
    case TREES_ERR_EPOCH_LIMIT: return ErrorCode::epoch_limit;
    case TREES_ERR_PROTOCOL: return ErrorCode::protocol;
    case TREES_ERR_INTERNAL: return ErrorCode::internal;
    case TREES_ERR_IO: return ErrorCode::io;
    case TREES_ERR_PARSE: return ErrorCode::parse;
    default: return ErrorCode::task_failure;
  }
}

trees_status fail(trees_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
trees_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return TREES_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TREES_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(TREES_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TREES_ERR_INTERNAL, "unknown exception");
  }
}

#define TREES_REQUIRE_ARG(cond, what)                                          \
  do {                                                                         \
    if (!(cond)) return fail(TREES_ERR_INVALID_ARGUMENT, std::string(what));  \
  } while (0)

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used == value.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::config, "option '" + key + "' expects an integer, got '" + value + "'");
}

std::int64_t default_capacity() {
  if (const char* env = std::getenv("TREES_CAPACITY")) {
    const std::int64_t v = parse_int("TREES_CAPACITY", env);
    if (v < 1) {
      throw Error(ErrorCode::config, "TREES_CAPACITY must be positive");
    }
    return v;
  }
  return trees::RunConfig{}.capacity;
}

trees::TaskArgs make_args(const trees_word* args, std::size_t nargs, std::uint32_t mask) {
  if (nargs > 0 && args == nullptr) {
    throw Error(ErrorCode::contract, "argument pointer is null");
  }
  if (nargs > trees::kArgWords) {
    throw Error(ErrorCode::contract, std::to_string(nargs) + " argument words exceed the limit of " +
                                         std::to_string(trees::kArgWords));
  }
  if (nargs < 32 && (mask >> nargs) != 0) {
    throw Error(ErrorCode::contract, "handle mask marks words beyond the argument count");
  }
  return trees::TaskArgs::from_words({args, nargs}, mask);
}

void fill_metrics(const trees::Metrics& m, trees_metrics* out) {
  out->epochs = m.epochs;
  out->map_drains = m.map_drains;
  out->work_tasks = m.work_tasks;
  out->work_map_items = m.work_map_items;
  out->launched_total = m.launched_total;
  out->peak_next_free_core = m.peak_next_free_core;
  out->work_groups = m.work_groups;
  out->atomic_ops = m.atomic_ops;
  out->lock_ops = m.lock_ops;
  out->critical_path = m.critical_path();
  out->utilization = m.utilization();
}

}  // namespace

struct trees_run {
  std::string program;
  trees::apps::AppOptions options;
  trees::RunConfig config;
  bool capacity_set = false;
  std::optional<trees::apps::AppInstance> instance;
  std::optional<trees::ProgramResult> result;
  std::string text_cache;
  std::string detail_cache;
};

struct trees_ctx {
  trees::TaskContext* task = nullptr;  // null inside map callbacks
  trees::Arena* arena = nullptr;
  const trees::TaskArgs* args = nullptr;
  std::int64_t slot = -1;
  std::int64_t cen = -1;
};

struct trees_program {
  struct TaskDef {
    std::string name;
    trees_task_fn fn;
    void* user;
  };
  struct MapDef {
    std::string name;
    trees_map_fn fn;
    void* user;
  };
  struct BufferDef {
    std::string name;
    std::vector<trees::Word> init;
  };
  std::vector<TaskDef> tasks;
  std::vector<MapDef> maps;
  std::vector<BufferDef> buffers;
  std::optional<std::pair<std::uint32_t, trees::TaskArgs>> root;
};

struct trees_result {
  trees::ProgramResult result;
  std::vector<std::size_t> offsets;  // buffer start offsets in output.words
};

extern "C" {

const char* trees_last_error_message(void) { return g_last_error.c_str(); }

const char* trees_status_name(trees_status status) {
  switch (status) {
    case TREES_OK: return "ok";
    case TREES_ERR_CONFIG: return "config";
    case TREES_ERR_CONTRACT: return "contract";
    case TREES_ERR_CAPACITY: return "capacity";
    case TREES_ERR_EPOCH_LIMIT: return "epoch_limit";
    case TREES_ERR_TASK_FAILED: return "task_failure";
    case TREES_ERR_PROTOCOL: return "protocol";
    case TREES_ERR_INTERNAL: return "internal";
    case TREES_ERR_IO: return "io";
    case TREES_ERR_PARSE: return "parse";
    case TREES_ERR_INVALID_ARGUMENT: return "invalid_argument";
  }
  return "unknown";
}

const char* trees_version(void) { return "1.0.0"; }

size_t trees_arg_words(void) { return trees::kArgWords; }

trees_status trees_run_create(const char* program, trees_run** out) {
  TREES_REQUIRE_ARG(program != nullptr && out != nullptr, "null argument to trees_run_create");
  *out = nullptr;
  return guarded([&] {
    const auto names = trees::apps::app_names();
    if (std::find(names.begin(), names.end(), program) == names.end()) {
      throw Error(ErrorCode::config, std::string("unknown program '") + program + "'");
    }
    auto run = std::make_unique<trees_run>();
    run->program = program;
    run->config.capacity = default_capacity();
    *out = run.release();
  });
}

void trees_run_destroy(trees_run* run) { delete run; }

trees_status trees_run_set_option(trees_run* run, const char* key, const char* value) {
  TREES_REQUIRE_ARG(run && key && value, "null argument to trees_run_set_option");
  return guarded([&] {
    const std::string k = key;
    const std::string v = value;
    auto& cfg = run->config;
    if (k == "backend") {
      if (v == "seq" || v == "sequential") {
        cfg.backend.kind = trees::BackendKind::sequential;
      } else if (v == "par" || v == "parallel") {
        cfg.backend.kind = trees::BackendKind::bulk_parallel;
      } else {
        throw Error(ErrorCode::config, "backend must be 'seq' or 'par', got '" + v + "'");
      }
    } else if (k == "workers") {
      const auto w = parse_int(k, v);
      if (w < 1 || w > 1024) {
        throw Error(ErrorCode::config, "workers must be in [1, 1024]");
      }
      cfg.backend.workers = static_cast<unsigned>(w);
    } else if (k == "group_size") {
      cfg.backend.group_size = parse_int(k, v);
    } else if (k == "capacity") {
      cfg.capacity = parse_int(k, v);
      run->capacity_set = true;
    } else if (k == "epoch_limit") {
      cfg.epoch_limit = parse_int(k, v);
    } else if (k == "trace_slots") {
      cfg.trace_slots = parse_int(k, v) != 0;
    } else if (k == "n" || k == "src" || k == "input" || k == "size" || k == "edges" ||
               k == "seed" || k == "max_weight") {
      if (k != "input") {
        (void)parse_int(k, v);
      }
      run->options.set(k, v);
    } else {
      throw Error(ErrorCode::config, "unknown option '" + k + "'");
    }
    run->result.reset();
    run->instance.reset();
  });
}

trees_status trees_run_execute(trees_run* run) {
  TREES_REQUIRE_ARG(run != nullptr, "null run");
  return guarded([&] {
    run->result.reset();
    if (run->config.capacity < 1) {
      throw Error(ErrorCode::config, "capacity must be positive");
    }
    if (run->config.epoch_limit < 1) {
      throw Error(ErrorCode::config, "epoch limit must be positive");
    }
    run->config.backend.validate();
    run->instance.emplace(trees::apps::make_app(run->program, run->options));
    run->result.emplace(trees::run_program(run->instance->program, run->config));
  });
}

#define TREES_REQUIRE_RESULT(run)                                                        \
  do {                                                                                   \
    TREES_REQUIRE_ARG(run != nullptr, "null run");                                       \
    if (!run->result) return fail(TREES_ERR_PROTOCOL, "run has not completed");          \
  } while (0)

trees_status trees_run_check(trees_run* run, int* ok, const char** detail) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(ok != nullptr, "null output");
  return guarded([&] {
    const auto outcome = run->instance->check(*run->result);
    *ok = outcome.ok ? 1 : 0;
    run->detail_cache = outcome.detail;
    if (detail) {
      *detail = run->detail_cache.c_str();
    }
  });
}

trees_status trees_run_result_text(trees_run* run, const char** text) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(text != nullptr, "null output");
  *text = run->result->output.text.c_str();
  return TREES_OK;
}

trees_status trees_run_result_words(trees_run* run, const trees_word** words, size_t* count) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(words && count, "null output");
  *words = run->result->output.words.data();
  *count = run->result->output.words.size();
  return TREES_OK;
}

trees_status trees_run_metrics_json(trees_run* run, int full, const char** json) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(json != nullptr, "null output");
  return guarded([&] {
    run->text_cache = trees::metrics_to_json(run->result->metrics,
                                             full ? trees::MetricsDetail::full
                                                  : trees::MetricsDetail::invariant)
                          .dump();
    *json = run->text_cache.c_str();
  });
}

trees_status trees_run_metrics_table(trees_run* run, const char** table) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(table != nullptr, "null output");
  return guarded([&] {
    run->text_cache = trees::metrics_table(run->result->metrics);
    *table = run->text_cache.c_str();
  });
}

trees_status trees_run_trace_jsonl(trees_run* run, const char** jsonl) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(jsonl != nullptr, "null output");
  return guarded([&] {
    run->text_cache = trees::trace_jsonl(run->result->trace, run->result->metrics);
    *jsonl = run->text_cache.c_str();
  });
}

trees_status trees_run_write_trace(trees_run* run, const char* path) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(path != nullptr, "null path");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) {
      throw Error(ErrorCode::io, std::string("cannot write trace to '") + path + "'");
    }
    trees::write_trace(out, run->result->trace, run->result->metrics);
    if (!out.flush()) {
      throw Error(ErrorCode::io, std::string("failed writing trace to '") + path + "'");
    }
  });
}

trees_status trees_run_halted(trees_run* run, int* halted) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(halted != nullptr, "null output");
  const auto& r = *run->result;
  *halted = r.halted && r.final_join_depth == 0 && r.final_ndrange_depth == 0 ? 1 : 0;
  return TREES_OK;
}

trees_status trees_run_metrics(trees_run* run, trees_metrics* out) {
  TREES_REQUIRE_RESULT(run);
  TREES_REQUIRE_ARG(out != nullptr, "null output");
  fill_metrics(run->result->metrics, out);
  return TREES_OK;
}

trees_status trees_compare_trace_files(const char* actual, const char* golden, int* identical,
                                       char** report) {
  TREES_REQUIRE_ARG(actual && golden && identical, "null argument to trees_compare_trace_files");
  return guarded([&] {
    const auto c = trees::compare_trace_files(actual, golden);
    *identical = c.identical ? 1 : 0;
    if (report) {
      *report = static_cast<char*>(std::malloc(c.report.size() + 1));
      if (*report == nullptr) {
        throw std::bad_alloc();
      }
      std::memcpy(*report, c.report.c_str(), c.report.size() + 1);
    }
  });
}

void trees_string_free(char* s) { std::free(s); }

trees_status trees_model_time(const trees_model_params* params, trees_model_case which,
                              double* out) {
  TREES_REQUIRE_ARG(params && out, "null argument to trees_model_time");
  TREES_REQUIRE_ARG(which >= TREES_MODEL_SCALAR && which <= TREES_MODEL_WORST, "unknown model case");
  return guarded([&] {
    const trees::PerfModelParams p{params->t1, params->tinf, params->p,    params->w,
                                   params->v1, params->vinf, params->depth};
    *out = trees::model_time(p, static_cast<trees::ModelCase>(which));
  });
}

// ---- user-defined programs ----

trees_status trees_program_create(trees_program** out) {
  TREES_REQUIRE_ARG(out != nullptr, "null output");
  *out = new (std::nothrow) trees_program();
  return *out ? TREES_OK : fail(TREES_ERR_CAPACITY, "out of memory");
}

void trees_program_destroy(trees_program* program) { delete program; }

trees_status trees_program_add_task(trees_program* program, const char* name, trees_task_fn fn,
                                    void* user, uint32_t* type_id) {
  TREES_REQUIRE_ARG(program && name && fn, "null argument to trees_program_add_task");
  return guarded([&] {
    program->tasks.push_back({name, fn, user});
    if (type_id) {
      *type_id = static_cast<std::uint32_t>(program->tasks.size());
    }
  });
}

trees_status trees_program_add_map(trees_program* program, const char* name, trees_map_fn fn,
                                   void* user, uint32_t* map_id) {
  TREES_REQUIRE_ARG(program && name && fn, "null argument to trees_program_add_map");
  return guarded([&] {
    program->maps.push_back({name, fn, user});
    if (map_id) {
      *map_id = static_cast<std::uint32_t>(program->maps.size() - 1);
    }
  });
}

trees_status trees_program_add_buffer(trees_program* program, const char* name,
                                      const trees_word* init, size_t count, uint32_t* buffer_id) {
  TREES_REQUIRE_ARG(program && name, "null argument to trees_program_add_buffer");
  TREES_REQUIRE_ARG(count == 0 || init != nullptr, "null buffer contents");
  return guarded([&] {
    for (const auto& b : program->buffers) {
      if (b.name == name) {
        throw Error(ErrorCode::config, std::string("duplicate buffer name '") + name + "'");
      }
    }
    program->buffers.push_back({name, std::vector<trees::Word>(init, init + count)});
    if (buffer_id) {
      *buffer_id = static_cast<std::uint32_t>(program->buffers.size() - 1);
    }
  });
}

trees_status trees_program_set_root(trees_program* program, uint32_t type_id,
                                    const trees_word* args, size_t nargs) {
  TREES_REQUIRE_ARG(program != nullptr, "null program");
  return guarded([&] { program->root.emplace(type_id, make_args(args, nargs, 0)); });
}

void trees_run_config_default(trees_run_config* cfg) {
  if (cfg == nullptr) {
    return;
  }
  const trees::RunConfig d;
  cfg->parallel = 0;
  cfg->workers = d.backend.workers;
  cfg->group_size = d.backend.group_size;
  cfg->capacity = d.capacity;
  cfg->epoch_limit = d.epoch_limit;
}

trees_status trees_program_run(const trees_program* program, const trees_run_config* cfg,
                               trees_result** out) {
  TREES_REQUIRE_ARG(program && out, "null argument to trees_program_run");
  *out = nullptr;
  return guarded([&] {
    if (!program->root) {
      throw Error(ErrorCode::config, "program has no root task");
    }
    trees::ProgramBuilder b;
    for (const auto& t : program->tasks) {
      b.registry().add_task(t.name, [fn = t.fn, user = t.user](trees::TaskContext& tc) {
        trees_ctx ctx{&tc, &tc.arena(), &tc.args(), tc.slot(), tc.cen()};
        const trees_status s = fn(&ctx, user);
        if (s != TREES_OK) {
          throw Error(code_of(s), g_last_error.empty() ? std::string("task returned ") +
                                                             trees_status_name(s)
                                                       : g_last_error);
        }
      });
    }
    for (const auto& m : program->maps) {
      b.registry().add_map(m.name, [fn = m.fn, user = m.user](trees::Arena& arena,
                                                              const trees::TaskArgs& args,
                                                              std::int64_t index) {
        trees_ctx ctx{nullptr, &arena, &args, -1, -1};
        const trees_status s = fn(&ctx, args.words().data(), args.size(), index, user);
        if (s != TREES_OK) {
          throw Error(code_of(s), g_last_error.empty() ? std::string("map returned ") +
                                                             trees_status_name(s)
                                                       : g_last_error);
        }
      });
    }
    auto res = std::make_unique<trees_result>();
    std::vector<trees::BufferId> ids;
    std::size_t offset = 0;
    for (const auto& buf : program->buffers) {
      ids.push_back(b.arena().add_words(buf.name, buf.init));
      res->offsets.push_back(offset);
      offset += buf.init.size();
    }
    res->offsets.push_back(offset);
    b.extractor([ids](const trees::Arena& arena, const trees::RuntimeState&) {
      trees::ProgramOutput o;
      for (const auto id : ids) {
        const auto w = arena.words(id);
        o.words.insert(o.words.end(), w.begin(), w.end());
      }
      return o;
    });
    b.root(trees::TaskTypeId{program->root->first}, program->root->second);

    trees::RunConfig rc;
    rc.capacity = default_capacity();
    if (cfg) {
      rc.backend.kind = cfg->parallel ? trees::BackendKind::bulk_parallel
                                      : trees::BackendKind::sequential;
      rc.backend.workers = cfg->workers;
      rc.backend.group_size = cfg->group_size;
      rc.capacity = cfg->capacity;
      rc.epoch_limit = cfg->epoch_limit;
    }
    res->result = trees::run_program(std::move(b).build(), rc);
    *out = res.release();
  });
}

void trees_result_destroy(trees_result* result) { delete result; }

trees_status trees_result_metrics(const trees_result* result, trees_metrics* out) {
  TREES_REQUIRE_ARG(result && out, "null argument to trees_result_metrics");
  fill_metrics(result->result.metrics, out);
  return TREES_OK;
}

trees_status trees_result_root(const trees_result* result, trees_word* value) {
  TREES_REQUIRE_ARG(result && value, "null argument to trees_result_root");
  *value = result->result.root_result;
  return TREES_OK;
}

trees_status trees_result_buffer(const trees_result* result, uint32_t buffer_id,
                                 const trees_word** data, size_t* count) {
  TREES_REQUIRE_ARG(result && data && count, "null argument to trees_result_buffer");
  TREES_REQUIRE_ARG(buffer_id + 1 < result->offsets.size(), "unknown buffer id");
  const auto begin = result->offsets[buffer_id];
  *data = result->result.output.words.data() + begin;
  *count = result->offsets[buffer_id + 1] - begin;
  return TREES_OK;
}

int64_t trees_ctx_slot(const trees_ctx* ctx) { return ctx ? ctx->slot : -1; }

int64_t trees_ctx_cen(const trees_ctx* ctx) { return ctx ? ctx->cen : -1; }

size_t trees_ctx_nargs(const trees_ctx* ctx) { return ctx && ctx->args ? ctx->args->size() : 0; }

trees_word trees_ctx_arg(const trees_ctx* ctx, size_t i) {
  if (ctx == nullptr || ctx->args == nullptr || i >= trees::kArgWords) {
    return 0;
  }
  return (*ctx->args)[i];
}

#define TREES_REQUIRE_TASK(ctx)                                                          \
  do {                                                                                   \
    TREES_REQUIRE_ARG(ctx != nullptr, "null context");                                   \
    if (ctx->task == nullptr)                                                            \
      return fail(TREES_ERR_CONTRACT, "task primitive called from a map work-item");     \
  } while (0)

trees_status trees_ctx_fork(trees_ctx* ctx, uint32_t type_id, const trees_word* args,
                            size_t nargs, uint32_t handle_mask, trees_word* handle) {
  TREES_REQUIRE_TASK(ctx);
  return guarded([&] {
    const auto h = ctx->task->fork(trees::TaskTypeId{type_id}, make_args(args, nargs, handle_mask));
    if (handle) {
      *handle = trees::TaskArgs{h}[0];
    }
  });
}

trees_status trees_ctx_join(trees_ctx* ctx, uint32_t type_id, const trees_word* args,
                            size_t nargs, uint32_t handle_mask) {
  TREES_REQUIRE_TASK(ctx);
  return guarded(
      [&] { ctx->task->join(trees::TaskTypeId{type_id}, make_args(args, nargs, handle_mask)); });
}

trees_status trees_ctx_emit(trees_ctx* ctx, trees_word value) {
  TREES_REQUIRE_TASK(ctx);
  return guarded([&] { ctx->task->emit(value); });
}

trees_status trees_ctx_map(trees_ctx* ctx, uint32_t map_id, const trees_word* args, size_t nargs,
                           int64_t range) {
  TREES_REQUIRE_TASK(ctx);
  return guarded(
      [&] { ctx->task->map(trees::MapFnId{map_id}, make_args(args, nargs, 0), range); });
}

trees_status trees_ctx_child_result(trees_ctx* ctx, trees_word handle, trees_word* value) {
  TREES_REQUIRE_TASK(ctx);
  TREES_REQUIRE_ARG(value != nullptr, "null output");
  return guarded([&] { *value = ctx->task->child_result(handle); });
}

trees_status trees_ctx_buffer(trees_ctx* ctx, uint32_t buffer_id, trees_word** data,
                              size_t* count) {
  TREES_REQUIRE_ARG(ctx && data && count, "null argument to trees_ctx_buffer");
  return guarded([&] {
    if (buffer_id >= ctx->arena->buffer_count() || !ctx->arena->is_words({buffer_id})) {
      throw Error(ErrorCode::contract, "unknown word buffer " + std::to_string(buffer_id));
    }
    const auto w = ctx->arena->words(trees::BufferId{buffer_id});
    *data = w.data();
    *count = w.size();
  });
}

}  // extern "C"
