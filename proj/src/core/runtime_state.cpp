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

#include "trees/runtime_state.hpp"

#include <algorithm>
#include <new>
#include <string>

namespace trees {

TaskVector::TaskVector(std::int64_t capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw Error(ErrorCode::config, "task vector capacity must be at least 1");
  }
  void* raw = std::calloc(static_cast<std::size_t>(capacity), sizeof(TaskEntry));
  if (raw == nullptr) {
    throw Error(ErrorCode::config,
                "cannot allocate task vector of " + std::to_string(capacity) + " slots");
  }
  data_.reset(static_cast<TaskEntry*>(raw));
}

RuntimeState::RuntimeState(std::int64_t cap, std::uint32_t types)
    : capacity(cap), num_task_types(types), tv(cap) {
  if (types < 1) {
    throw Error(ErrorCode::config, "a program needs at least one task type");
  }
}

std::unique_ptr<RuntimeState> init_state(std::int64_t capacity, std::uint32_t num_task_types,
                                         TaskTypeId root_type, const TaskArgs& root_args) {
  if (capacity < 1) {
    throw Error(ErrorCode::config, "task vector capacity must be at least 1");
  }
  if (root_type.value < 1 || root_type.value > num_task_types) {
    throw Error(ErrorCode::config,
                "root task type " + std::to_string(root_type.value) + " is not registered");
  }
  auto state = std::make_unique<RuntimeState>(capacity, num_task_types);
  TaskEntry& root = state->tv[0];
  root.code = encode_task(0, root_type, num_task_types);
  root.args = root_args.raw();
  state->cen = 0;
  state->current = NDRange{0, 0};
  state->next_free_core.store(1);
  state->old_next_free_core = 1;
  state->join_stack = {0};
  state->ndrange_stack = {NDRange{0, 0}};
  return state;
}

EpochLaunch epoch_setup(RuntimeState& state) {
  if (state.join_stack.size() != state.ndrange_stack.size()) {
    throw Error(ErrorCode::internal, "join stack and NDRange stack depths differ");
  }
  if (state.join_stack.empty()) {
    throw Error(ErrorCode::protocol, "epoch_setup called on a halted machine");
  }
  state.cen = state.join_stack.back();
  state.join_stack.pop_back();
  state.current = state.ndrange_stack.back();
  state.ndrange_stack.pop_back();

  // Every slot above the popped range belongs to a finished subtree.
  state.next_free_core.store(state.current.hi + 1);
  state.old_next_free_core = state.current.hi + 1;
  state.join_scheduled.store(false);
  state.map_scheduled.store(false);
  return EpochLaunch{state.cen, state.current};
}

std::vector<StackPush> epoch_finish(RuntimeState& state) {
  std::vector<StackPush> pushes;
  if (state.join_scheduled.load()) {
    pushes.push_back({state.cen, state.current});
  }
  const std::int64_t next = state.next_free_core.load();
  if (next > state.old_next_free_core) {
    pushes.push_back({state.cen + 1, NDRange{state.old_next_free_core, next - 1}});
  }
  for (const StackPush& p : pushes) {
    state.join_stack.push_back(p.epoch);
    state.ndrange_stack.push_back(p.ndrange);
  }
  return pushes;
}

bool halted(const RuntimeState& state) {
  if (state.join_stack.size() != state.ndrange_stack.size()) {
    throw Error(ErrorCode::internal, "join stack and NDRange stack depths differ");
  }
  return state.join_stack.empty();
}

EpochTrace snapshot_trace(const RuntimeState& state, std::int64_t epoch_index,
                          std::int64_t launched, std::int64_t valid_executed, bool with_slots) {
  EpochTrace t;
  t.epoch_index = epoch_index;
  t.cen = state.cen;
  t.ndrange = state.current;
  t.launched = launched;
  t.valid_executed = valid_executed;
  t.next_free_core = state.next_free_core.load();
  t.forked = std::max<std::int64_t>(0, t.next_free_core - state.old_next_free_core);
  t.join_scheduled = state.join_scheduled.load();
  t.map_scheduled = state.map_scheduled.load();
  t.join_stack = state.join_stack;
  t.ndrange_stack = state.ndrange_stack;
  if (with_slots) {
    std::vector<SlotSnapshot> slots;
    for (std::int64_t s = 0; s < t.next_free_core; ++s) {
      const TaskEntry& e = state.tv[s];
      if (!e.code.is_invalid()) {
        const DecodedTask d = decode_task(e.code, state.num_task_types);
        slots.push_back({s, d.epoch, d.type.value});
      }
    }
    t.slots = std::move(slots);
  }
  return t;
}

}  // namespace trees
