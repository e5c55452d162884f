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

#ifndef TREES_REGISTRY_HPP
#define TREES_REGISTRY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trees/arena.hpp"
#include "trees/task_args.hpp"

namespace trees {

class TaskContext;

using TaskFn = std::function<void(TaskContext&)>;
using MapFn = std::function<void(Arena&, const TaskArgs&, std::int64_t index)>;

/// Task and map functions by id. TaskTypeId i names task_fns[i - 1].
class TaskRegistry {
 public:
  struct TaskEntryFn {
    std::string name;
    TaskFn fn;
  };
  struct MapEntryFn {
    std::string name;
    MapFn fn;
  };

  TaskTypeId declare_task(std::string name);
  void define_task(TaskTypeId id, TaskFn fn);
  TaskTypeId add_task(std::string name, TaskFn fn);

  MapFnId declare_map(std::string name);
  void define_map(MapFnId id, MapFn fn);
  MapFnId add_map(std::string name, MapFn fn);

  std::uint32_t num_task_types() const noexcept {
    return static_cast<std::uint32_t>(tasks_.size());
  }
  std::uint32_t num_map_fns() const noexcept { return static_cast<std::uint32_t>(maps_.size()); }

  bool has_task(TaskTypeId id) const noexcept {
    return id.value >= 1 && id.value <= tasks_.size();
  }
  bool has_map(MapFnId id) const noexcept { return id.value < maps_.size(); }

  const TaskEntryFn& task(TaskTypeId id) const { return tasks_[id.value - 1]; }
  const MapEntryFn& map(MapFnId id) const { return maps_[id.value]; }

  std::optional<TaskTypeId> find_task(std::string_view name) const;
  std::optional<MapFnId> find_map(std::string_view name) const;

  /// Throws ErrorCode::config on zero tasks, duplicate names, or undefined functions.
  void validate() const;

 private:
  std::vector<TaskEntryFn> tasks_;
  std::vector<MapEntryFn> maps_;
};

}  // namespace trees

#endif  // TREES_REGISTRY_HPP
