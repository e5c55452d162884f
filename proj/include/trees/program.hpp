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

#ifndef TREES_PROGRAM_HPP
#define TREES_PROGRAM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "trees/arena.hpp"
#include "trees/executor.hpp"
#include "trees/registry.hpp"

namespace trees {

/// What a program reports after a run.
struct ProgramOutput {
  std::vector<Word> words;
  std::vector<double> reals;
  std::string text;

  friend bool operator==(const ProgramOutput&, const ProgramOutput&) = default;
};

using ResultExtractor = std::function<ProgramOutput(const Arena&, const RuntimeState&)>;

/// Frozen program: registry, initial arena, root task and result extractor.
class Program {
 public:
  const TaskRegistry& registry() const noexcept { return registry_; }
  const Arena& initial_arena() const noexcept { return arena_; }
  TaskTypeId root_type() const noexcept { return root_type_; }
  const TaskArgs& root_args() const noexcept { return root_args_; }
  ProgramOutput extract(const Arena& arena, const RuntimeState& state) const;

 private:
  friend class ProgramBuilder;
  Program() = default;

  TaskRegistry registry_;
  Arena arena_;
  TaskTypeId root_type_;
  TaskArgs root_args_;
  ResultExtractor extractor_;
};

class ProgramBuilder {
 public:
  TaskRegistry& registry() noexcept { return registry_; }
  Arena& arena() noexcept { return arena_; }

  ProgramBuilder& root(TaskTypeId type, TaskArgs args = {});
  ProgramBuilder& extractor(ResultExtractor fn);

  /// Validates the declaration and freezes it. Throws ErrorCode::config.
  Program build() &&;

 private:
  TaskRegistry registry_;
  Arena arena_;
  TaskTypeId root_type_;
  TaskArgs root_args_;
  ResultExtractor extractor_;
  bool has_root_ = false;
};

struct RunConfig {
  BackendConfig backend;
  std::int64_t capacity = 1'048'576;
  std::int64_t epoch_limit = 1'000'000;
  bool record_trace = true;
  bool trace_slots = false;
  EpochObserver observer;
};

struct ProgramResult {
  ProgramOutput output;
  Metrics metrics;
  std::vector<EpochTrace> trace;
  std::vector<EpochCounters> counters;
  Word root_result = 0;
  bool halted = false;
  std::size_t final_join_depth = 0;
  std::size_t final_ndrange_depth = 0;
};

/// Runs `program` on a fresh copy of its arena.
ProgramResult run_program(const Program& program, const RunConfig& config = {});

}  // namespace trees

#endif  // TREES_PROGRAM_HPP
