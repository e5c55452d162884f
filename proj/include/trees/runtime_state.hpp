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

#ifndef TREES_RUNTIME_STATE_HPP
#define TREES_RUNTIME_STATE_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <optional>
#include <vector>

#include "trees/task_args.hpp"
#include "trees/task_code.hpp"

namespace trees {

/// A data-parallel launch requested by `map`, executed after the epoch.
struct MapRequest {
  MapFnId fn;
  TaskArgs args;
  std::int64_t range = 1;
};

/// Zero-initialized, fixed-capacity slot array. Backed by calloc so a large
/// capacity costs address space, not touched memory.
class TaskVector {
 public:
  explicit TaskVector(std::int64_t capacity);

  TaskEntry& operator[](std::int64_t slot) noexcept { return data_[slot]; }
  const TaskEntry& operator[](std::int64_t slot) const noexcept { return data_[slot]; }
  std::int64_t capacity() const noexcept { return capacity_; }

 private:
  struct FreeDeleter {
    void operator()(TaskEntry* p) const noexcept { std::free(p); }
  };
  std::unique_ptr<TaskEntry[], FreeDeleter> data_;
  std::int64_t capacity_;
};

/// Whole machine state. Host-only fields (stacks, cen, old_next_free_core)
/// are touched by Phases 1 and 3; executor threads touch only the task
/// vector, next_free_core, and the two flags during Phase 2.
struct RuntimeState {
  RuntimeState(std::int64_t capacity, std::uint32_t num_task_types);
  RuntimeState(const RuntimeState&) = delete;
  RuntimeState& operator=(const RuntimeState&) = delete;

  std::int64_t capacity;
  std::uint32_t num_task_types;
  TaskVector tv;

  std::vector<std::int64_t> join_stack;
  std::vector<NDRange> ndrange_stack;

  std::int64_t cen = 0;
  NDRange current;  // range launched by the epoch in progress
  std::atomic<std::int64_t> next_free_core{0};
  std::int64_t old_next_free_core = 0;
  std::atomic<bool> join_scheduled{false};
  std::atomic<bool> map_scheduled{false};
  std::vector<MapRequest> map_queue;
};

struct EpochLaunch {
  std::int64_t cen = 0;
  NDRange ndrange;
};

struct StackPush {
  std::int64_t epoch = 0;
  NDRange ndrange;
  friend bool operator==(const StackPush&, const StackPush&) = default;
};

/// Debug view of one live slot, emitted only with slot tracing enabled.
struct SlotSnapshot {
  std::int64_t slot = 0;
  std::int64_t epoch = 0;
  std::uint32_t type = 0;
  friend bool operator==(const SlotSnapshot&, const SlotSnapshot&) = default;
};

/// State after one epoch (Phase 3 and any map drain complete).
struct EpochTrace {
  std::int64_t epoch_index = 0;
  std::int64_t cen = 0;
  NDRange ndrange;
  std::int64_t launched = 0;
  std::int64_t valid_executed = 0;
  std::int64_t forked = 0;
  bool join_scheduled = false;
  bool map_scheduled = false;
  std::vector<std::int64_t> join_stack;
  std::vector<NDRange> ndrange_stack;
  std::int64_t next_free_core = 0;
  std::optional<std::vector<SlotSnapshot>> slots;

  friend bool operator==(const EpochTrace&, const EpochTrace&) = default;
};

/// Fresh machine with the root task in slot 0, runnable in epoch 0.
std::unique_ptr<RuntimeState> init_state(std::int64_t capacity, std::uint32_t num_task_types,
                                         TaskTypeId root_type, const TaskArgs& root_args = {});

/// Phase 1: pop the next epoch, reclaim slots above its range, clear flags.
EpochLaunch epoch_setup(RuntimeState& state);

/// Phase 3: push the join entry (if any) and then the fork range (if any).
std::vector<StackPush> epoch_finish(RuntimeState& state);

/// True iff no epoch remains. Throws if the paired stacks disagree in depth.
bool halted(const RuntimeState& state);

EpochTrace snapshot_trace(const RuntimeState& state, std::int64_t epoch_index,
                          std::int64_t launched, std::int64_t valid_executed,
                          bool with_slots = false);

}  // namespace trees

#endif  // TREES_RUNTIME_STATE_HPP
