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

#ifndef TREES_EXECUTOR_HPP
#define TREES_EXECUTOR_HPP

#include <cstdint>
#include <functional>
#include <memory>

#include "trees/arena.hpp"
#include "trees/metrics.hpp"
#include "trees/registry.hpp"
#include "trees/runtime_state.hpp"

namespace trees {

enum class BackendKind { sequential, bulk_parallel };

/// How forks obtain slots. per_call: one fetch-add per fork.
/// group_batched: forks of a work-group are tallied and reserved with one
/// fetch-add, then placed by intra-group rank.
enum class AllocationMode { automatic, per_call, group_batched };

struct BackendConfig {
  BackendKind kind = BackendKind::sequential;
  unsigned workers = 1;
  std::int64_t group_size = 256;
  AllocationMode allocation = AllocationMode::automatic;

  AllocationMode effective_allocation() const noexcept {
    if (allocation != AllocationMode::automatic) {
      return allocation;
    }
    return kind == BackendKind::sequential ? AllocationMode::per_call
                                           : AllocationMode::group_batched;
  }
  void validate() const;
};

namespace detail {
struct EpochEnv;
struct WorkerScratch;
class WorkerPool;
}  // namespace detail

/// Handle given to a task body for the duration of one activation.
///
/// fork, join, emit and map follow continuation-passing discipline: join and
/// emit are terminal, each at most once, and mutually exclusive; nothing may
/// be called after either. Children forked here first run in the next epoch.
class TaskContext {
 public:
  TaskContext(const TaskContext&) = delete;
  TaskContext& operator=(const TaskContext&) = delete;

  std::int64_t slot() const noexcept { return slot_; }
  std::int64_t cen() const noexcept;
  TaskTypeId type() const noexcept { return type_; }
  const TaskArgs& args() const noexcept { return args_; }
  Word arg(std::size_t i) const noexcept { return args_[i]; }
  Arena& arena() noexcept;

  ChildHandle fork(TaskTypeId type, const TaskArgs& args);
  void join(TaskTypeId type, const TaskArgs& args);
  void emit(Word value);
  void map(MapFnId fn, const TaskArgs& args, std::int64_t range);

  /// Value emitted by the child whose handle was passed in as `handle_word`.
  Word child_result(Word handle_word) const;

 private:
  friend struct detail::EpochEnv;
  enum class Outcome : std::uint8_t { running, joined, emitted };

  TaskContext(detail::EpochEnv& env, detail::WorkerScratch& scratch, std::int64_t slot,
              TaskTypeId type, const TaskArgs& args);
  void require_running(const char* primitive) const;

  detail::EpochEnv& env_;
  detail::WorkerScratch& scratch_;
  std::int64_t slot_;
  TaskTypeId type_;
  TaskArgs args_;
  Outcome outcome_ = Outcome::running;
};

struct LaunchResult {
  std::int64_t launched = 0;
  std::int64_t valid_executed = 0;
  std::int64_t work_groups = 0;
  std::int64_t groups_with_forks = 0;
  std::int64_t next_free_core_atomics = 0;
};

/// Per-epoch instrumentation that is not part of the serialized trace.
struct EpochCounters {
  std::int64_t work_groups = 0;
  std::int64_t groups_with_forks = 0;
  std::int64_t next_free_core_atomics = 0;
  std::int64_t map_items = 0;
  std::int64_t lock_ops = 0;
};

struct RunLimits {
  std::int64_t epoch_limit = 1'000'000;
  bool trace_slots = false;
};

using EpochObserver = std::function<void(const EpochTrace&, const EpochCounters&)>;

/// Phase-2 engine. Owns the worker threads of the bulk-parallel backend.
class Executor {
 public:
  explicit Executor(const BackendConfig& config);
  ~Executor();
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  const BackendConfig& config() const noexcept { return config_; }

  /// Visits every slot of `ndrange` once, running those runnable at `cen`.
  LaunchResult launch_epoch(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                            std::int64_t cen, NDRange ndrange);

  /// Runs and clears the queued map requests. Returns work items run.
  std::int64_t drain_maps(RuntimeState& state, const TaskRegistry& registry, Arena& arena);

  /// Epoch loop: setup, launch, finish, drain maps, observe; until halted.
  Metrics run_to_completion(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                            const RunLimits& limits = {}, const EpochObserver& observer = {});

 private:
  BackendConfig config_;
  std::unique_ptr<detail::WorkerPool> pool_;
};

LaunchResult launch_epoch(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                          std::int64_t cen, NDRange ndrange, const BackendConfig& backend = {});

std::int64_t drain_maps(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                        const BackendConfig& backend = {});

Metrics run_to_completion(RuntimeState& state, const TaskRegistry& registry, Arena& arena,
                          const BackendConfig& backend = {}, const RunLimits& limits = {},
                          const EpochObserver& observer = {});

}  // namespace trees

#endif  // TREES_EXECUTOR_HPP
