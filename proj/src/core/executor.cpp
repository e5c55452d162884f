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

#include "trees/executor.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include "worker_pool.hpp"

namespace trees {

void BackendConfig::validate() const {
  if (workers < 1) {
    throw Error(ErrorCode::config, "backend needs at least one worker");
  }
  if (group_size < 1) {
    throw Error(ErrorCode::config, "work-group size must be at least 1");
  }
}

namespace detail {

struct StagedFork {
  std::int64_t parent_slot;
  TaskCode code;
  TaskArgs args;
  std::int64_t slot;  // -1 until the group reserves its block
};

enum class Finish : std::uint8_t { retired, joined, emitted };

struct StagedFinish {
  std::int64_t slot;
  Finish kind;
  TaskCode code;
  TaskArgs args;
  Word result;
};

/// Per-worker buffers. forks/finishes hold one work-group at a time; maps and
/// counters accumulate over the epoch.
struct WorkerScratch {
  std::vector<StagedFork> forks;
  std::vector<StagedFinish> finishes;
  std::vector<MapRequest> maps;
  bool group_mapped = false;
  std::int64_t valid = 0;
  std::int64_t groups = 0;
  std::int64_t groups_with_forks = 0;
  std::int64_t atomics = 0;

  void reset_epoch() {
    maps.clear();
    valid = groups = groups_with_forks = atomics = 0;
  }
};

std::string describe_task(const TaskRegistry& registry, std::int64_t slot, TaskTypeId type) {
  return "slot " + std::to_string(slot) + " (task '" + registry.task(type).name + "', type " +
         std::to_string(type.value) + ")";
}

struct EpochEnv {
  RuntimeState& state;
  const TaskRegistry& registry;
  Arena& arena;
  std::int64_t cen;
  bool batched;

  std::atomic<bool> failed{false};
  std::exception_ptr error;

  void record_failure() noexcept {
    if (!failed.exchange(true)) {
      error = std::current_exception();
    }
  }

  [[noreturn]] void capacity_exhausted(std::int64_t forking_slot) const {
    throw Error(ErrorCode::capacity, "task vector capacity " + std::to_string(state.capacity) +
                                         " exhausted by fork in slot " +
                                         std::to_string(forking_slot));
  }

  void run_group(std::int64_t lo, std::int64_t hi, WorkerScratch& s) {
    s.forks.clear();
    s.finishes.clear();
    s.group_mapped = false;
    ++s.groups;
    const std::uint32_t types = state.num_task_types;
    for (std::int64_t slot = lo; slot <= hi; ++slot) {
      const TaskEntry& entry = state.tv[slot];
      if (!is_runnable(entry.code, cen, types)) {
        continue;
      }
      ++s.valid;
      const TaskTypeId type = decode_task(entry.code, types).type;
      TaskContext ctx(*this, s, slot, type, TaskArgs::from_words(entry.args));
      try {
        registry.task(type).fn(ctx);
      } catch (const Error& e) {
        throw Error(e.code(), describe_task(registry, slot, type) + ": " + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorCode::task_failure,
                    describe_task(registry, slot, type) + " failed: " + e.what());
      } catch (...) {
        throw Error(ErrorCode::task_failure,
                    describe_task(registry, slot, type) + " failed with a non-standard exception");
      }
      if (ctx.outcome_ == TaskContext::Outcome::running) {
        s.finishes.push_back({slot, Finish::retired, kInvalidCode, {}, 0});
      }
    }
    commit(s);
  }

  // Coalesced write-back of one work-group's primitive effects.
  void commit(WorkerScratch& s) {
    const auto forks = static_cast<std::int64_t>(s.forks.size());
    Word base = 0;
    if (forks > 0) {
      ++s.groups_with_forks;
      if (batched) {
        base = state.next_free_core.fetch_add(forks);
        ++s.atomics;
        if (base + forks > state.capacity) {
          const std::int64_t first_over = std::max<std::int64_t>(0, state.capacity - base);
          capacity_exhausted(s.forks[first_over].parent_slot);
        }
        for (std::int64_t i = 0; i < forks; ++i) {
          s.forks[i].slot = base + i;
        }
      }
      for (StagedFork& f : s.forks) {
        if (batched) {
          f.args.resolve_handles(base);
        }
        TaskEntry& e = state.tv[f.slot];
        e.code = f.code;
        e.args = f.args.raw();
      }
    }
    bool joined = false;
    for (StagedFinish& fin : s.finishes) {
      TaskEntry& e = state.tv[fin.slot];
      switch (fin.kind) {
        case Finish::joined:
          if (batched) {
            fin.args.resolve_handles(base);
          }
          e.code = fin.code;
          e.args = fin.args.raw();
          joined = true;
          break;
        case Finish::emitted:
          e.result = fin.result;
          e.code = kInvalidCode;
          break;
        case Finish::retired:
          e.code = kInvalidCode;
          break;
      }
    }
    if (joined) {
      state.join_scheduled.store(true);
    }
    if (s.group_mapped) {
      state.map_scheduled.store(true);
    }
  }
};

}  // namespace detail

using detail::EpochEnv;
using detail::WorkerScratch;

TaskContext::TaskContext(EpochEnv& env, WorkerScratch& scratch, std::int64_t slot,
                         TaskTypeId type, const TaskArgs& args)
    : env_(env), scratch_(scratch), slot_(slot), type_(type), args_(args) {}

std::int64_t TaskContext::cen() const noexcept { return env_.cen; }

Arena& TaskContext::arena() noexcept { return env_.arena; }

void TaskContext::require_running(const char* primitive) const {
  if (outcome_ != Outcome::running) {
    throw Error(ErrorCode::contract,
                std::string(primitive) + " called after " +
                    (outcome_ == Outcome::joined ? "join" : "emit") + " in slot " +
                    std::to_string(slot_));
  }
}

ChildHandle TaskContext::fork(TaskTypeId type, const TaskArgs& args) {
  require_running("fork");
  const TaskCode code = encode_task(env_.cen + 1, type, env_.state.num_task_types);
  if (env_.batched) {
    const auto rank = static_cast<Word>(scratch_.forks.size());
    scratch_.forks.push_back({slot_, code, args, -1});
    return ChildHandle(rank);
  }
  const std::int64_t slot = env_.state.next_free_core.fetch_add(1);
  ++scratch_.atomics;
  if (slot >= env_.state.capacity) {
    env_.capacity_exhausted(slot_);
  }
  scratch_.forks.push_back({slot_, code, args, slot});
  return ChildHandle(slot);
}

void TaskContext::join(TaskTypeId type, const TaskArgs& args) {
  require_running("join");
  const TaskCode code = encode_task(env_.cen, type, env_.state.num_task_types);
  outcome_ = Outcome::joined;
  scratch_.finishes.push_back({slot_, detail::Finish::joined, code, args, 0});
}

void TaskContext::emit(Word value) {
  require_running("emit");
  outcome_ = Outcome::emitted;
  scratch_.finishes.push_back({slot_, detail::Finish::emitted, kInvalidCode, {}, value});
}

void TaskContext::map(MapFnId fn, const TaskArgs& args, std::int64_t range) {
  require_running("map");
  if (!env_.registry.has_map(fn)) {
    throw Error(ErrorCode::contract, "map function " + std::to_string(fn.value) +
                                         " is not registered");
  }
  if (range < 1) {
    throw Error(ErrorCode::contract, "map range must be at least 1, got " + std::to_string(range));
  }
  scratch_.maps.push_back({fn, args, range});
  scratch_.group_mapped = true;
}

Word TaskContext::child_result(Word handle_word) const {
  if (handle_word < 0 || handle_word >= env_.state.capacity) {
    throw Error(ErrorCode::contract, "child handle " + std::to_string(handle_word) +
                                         " is not a task vector slot");
  }
  return env_.state.tv[handle_word].result;
}

Executor::Executor(const BackendConfig& config) : config_(config) {
  config_.validate();
  if (config_.kind == BackendKind::bulk_parallel) {
    pool_ = std::make_unique<detail::WorkerPool>(config_.workers);
  }
}

Executor::~Executor() = default;

LaunchResult Executor::launch_epoch(RuntimeState& state, const TaskRegistry& registry,
                                    Arena& arena, std::int64_t cen, NDRange ndrange) {
  if (ndrange.lo < 0 || ndrange.hi < ndrange.lo || ndrange.hi >= state.capacity) {
    throw Error(ErrorCode::protocol, "launch range [" + std::to_string(ndrange.lo) + ", " +
                                         std::to_string(ndrange.hi) + "] is not within capacity");
  }
  EpochEnv env{state, registry, arena, cen,
               config_.effective_allocation() == AllocationMode::group_batched, {}, {}};

  const std::int64_t g = config_.group_size;
  const std::int64_t groups = (ndrange.size() + g - 1) / g;
  const unsigned workers = pool_ ? pool_->size() : 1;
  std::vector<WorkerScratch> scratch(workers);

  auto group_bounds = [&](std::int64_t index) {
    const std::int64_t lo = ndrange.lo + index * g;
    return std::pair{lo, std::min(ndrange.hi, lo + g - 1)};
  };

  if (!pool_) {
    for (std::int64_t i = 0; i < groups; ++i) {
      const auto [lo, hi] = group_bounds(i);
      env.run_group(lo, hi, scratch[0]);
    }
  } else {
    std::atomic<std::int64_t> next_group{0};
    pool_->run([&](unsigned worker) {
      WorkerScratch& s = scratch[worker];
      while (!env.failed.load(std::memory_order_relaxed)) {
        const std::int64_t i = next_group.fetch_add(1, std::memory_order_relaxed);
        if (i >= groups) {
          break;
        }
        try {
          const auto [lo, hi] = group_bounds(i);
          env.run_group(lo, hi, s);
        } catch (...) {
          env.record_failure();
        }
      }
    });
    if (env.failed.load()) {
      std::rethrow_exception(env.error);
    }
  }

  LaunchResult r;
  r.launched = ndrange.size();
  r.work_groups = groups;
  for (WorkerScratch& s : scratch) {
    r.valid_executed += s.valid;
    r.groups_with_forks += s.groups_with_forks;
    r.next_free_core_atomics += s.atomics;
    std::move(s.maps.begin(), s.maps.end(), std::back_inserter(state.map_queue));
  }
  return r;
}

std::int64_t Executor::drain_maps(RuntimeState& state, const TaskRegistry& registry,
                                  Arena& arena) {
  std::vector<MapRequest> queue = std::move(state.map_queue);
  state.map_queue.clear();
  if (queue.empty()) {
    return 0;
  }
  // prefix[i] = first global item index of request i
  std::vector<std::int64_t> prefix(queue.size() + 1, 0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    prefix[i + 1] = prefix[i] + queue[i].range;
  }
  const std::int64_t total = prefix.back();

  auto run_items = [&](std::int64_t begin, std::int64_t end) {
    auto req = static_cast<std::size_t>(
        std::upper_bound(prefix.begin(), prefix.end(), begin) - prefix.begin() - 1);
    for (std::int64_t item = begin; item < end; ++item) {
      while (item >= prefix[req + 1]) {
        ++req;
      }
      const MapRequest& m = queue[req];
      const std::int64_t index = item - prefix[req];
      try {
        registry.map(m.fn).fn(arena, m.args, index);
      } catch (const Error& e) {
        throw Error(e.code(), "map '" + registry.map(m.fn).name + "' item " +
                                  std::to_string(index) + ": " + e.what());
      } catch (const std::exception& e) {
        throw Error(ErrorCode::task_failure, "map '" + registry.map(m.fn).name + "' item " +
                                                 std::to_string(index) + " failed: " + e.what());
      }
    }
  };

  if (!pool_) {
    run_items(0, total);
    return total;
  }
  const std::int64_t g = config_.group_size;
  const std::int64_t chunks = (total + g - 1) / g;
  std::atomic<std::int64_t> next_chunk{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  pool_->run([&](unsigned) {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::int64_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) {
        break;
      }
      try {
        run_items(c * g, std::min(total, (c + 1) * g));
      } catch (...) {
        if (!failed.exchange(true)) {
          error = std::current_exception();
        }
      }
    }
  });
  if (failed.load()) {
    std::rethrow_exception(error);
  }
  return total;
}

Metrics Executor::run_to_completion(RuntimeState& state, const TaskRegistry& registry,
                                    Arena& arena, const RunLimits& limits,
                                    const EpochObserver& observer) {
  if (registry.num_task_types() != state.num_task_types) {
    throw Error(ErrorCode::config, "registry and runtime state disagree on the number of task types");
  }
  Metrics m;
  m.peak_next_free_core = state.next_free_core.load();
  while (!halted(state)) {
    if (m.epochs >= limits.epoch_limit) {
      throw Error(ErrorCode::epoch_limit, "epoch limit of " + std::to_string(limits.epoch_limit) +
                                              " reached before the machine halted");
    }
    const EpochLaunch launch = epoch_setup(state);
    const LaunchResult r = launch_epoch(state, registry, arena, launch.cen, launch.ndrange);
    epoch_finish(state);

    EpochCounters counters;
    counters.work_groups = r.work_groups;
    counters.groups_with_forks = r.groups_with_forks;
    counters.next_free_core_atomics = r.next_free_core_atomics;
    if (state.map_scheduled.load()) {
      counters.map_items = drain_maps(state, registry, arena);
      m = record_map_drain(m, counters.map_items);
    }
    const EpochTrace trace = snapshot_trace(state, m.epochs, r.launched, r.valid_executed,
                                            limits.trace_slots);
    m = record_epoch(m, trace);
    m.work_groups += r.work_groups;
    m.atomic_ops += r.next_free_core_atomics;
    m.lock_ops += counters.lock_ops;
    if (observer) {
      observer(trace, counters);
    }
  }
  return m;
}

LaunchResult launch_epoch(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                          std::int64_t cen, NDRange ndrange, const BackendConfig& backend) {
  Executor exec(backend);
  return exec.launch_epoch(state, registry, arena, cen, ndrange);
}

std::int64_t drain_maps(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                        const BackendConfig& backend) {
  Executor exec(backend);
  return exec.drain_maps(state, registry, arena);
}

Metrics run_to_completion(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                          const BackendConfig& backend, const RunLimits& limits,
                          const EpochObserver& observer) {
  Executor exec(backend);
  return exec.run_to_completion(state, registry, arena, limits, observer);
}

}  // namespace trees
