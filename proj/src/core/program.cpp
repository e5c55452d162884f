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

#include "trees/program.hpp"

#include "trees/error.hpp"

namespace trees {

ProgramOutput Program::extract(const Arena& arena, const RuntimeState& state) const {
  if (!extractor_) {
    return ProgramOutput{{state.tv[0].result}, {}, std::to_string(state.tv[0].result)};
  }
  return extractor_(arena, state);
}

ProgramBuilder& ProgramBuilder::root(TaskTypeId type, TaskArgs args) {
  root_type_ = type;
  root_args_ = args;
  has_root_ = true;
  return *this;
}

ProgramBuilder& ProgramBuilder::extractor(ResultExtractor fn) {
  extractor_ = std::move(fn);
  return *this;
}

Program ProgramBuilder::build() && {
  registry_.validate();
  if (!has_root_ || !registry_.has_task(root_type_)) {
    throw Error(ErrorCode::config, "program root task is missing or not registered");
  }
  if (root_args_.handle_mask() != 0) {
    throw Error(ErrorCode::config, "root arguments cannot carry child handles");
  }
  Program p;
  p.registry_ = std::move(registry_);
  p.arena_ = std::move(arena_);
  p.root_type_ = root_type_;
  p.root_args_ = root_args_;
  p.extractor_ = std::move(extractor_);
  return p;
}

ProgramResult run_program(const Program& program, const RunConfig& config) {
  config.backend.validate();
  if (config.trace_slots && config.backend.kind != BackendKind::sequential) {
    throw Error(ErrorCode::config, "slot tracing requires the sequential backend");
  }
  Arena arena = program.initial_arena();
  auto state = init_state(config.capacity, program.registry().num_task_types(),
                          program.root_type(), program.root_args());

  ProgramResult result;
  Executor executor(config.backend);
  RunLimits limits{config.epoch_limit, config.trace_slots};
  result.metrics = executor.run_to_completion(
      *state, program.registry(), arena, limits,
      [&](const EpochTrace& trace, const EpochCounters& counters) {
        if (config.record_trace) {
          result.trace.push_back(trace);
        }
        result.counters.push_back(counters);
        if (config.observer) {
          config.observer(trace, counters);
        }
      });
  result.halted = halted(*state);
  result.final_join_depth = state->join_stack.size();
  result.final_ndrange_depth = state->ndrange_stack.size();
  result.root_result = state->tv[0].result;
  result.output = program.extract(arena, *state);
  return result;
}

}  // namespace trees
