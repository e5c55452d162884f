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

#include "trees/registry.hpp"

#include <set>

#include "trees/error.hpp"

namespace trees {

TaskTypeId TaskRegistry::declare_task(std::string name) {
  tasks_.push_back({std::move(name), nullptr});
  return TaskTypeId{static_cast<std::uint32_t>(tasks_.size())};
}

void TaskRegistry::define_task(TaskTypeId id, TaskFn fn) {
  if (!has_task(id)) {
    throw Error(ErrorCode::config, "define_task: undeclared task type " + std::to_string(id.value));
  }
  tasks_[id.value - 1].fn = std::move(fn);
}

TaskTypeId TaskRegistry::add_task(std::string name, TaskFn fn) {
  const TaskTypeId id = declare_task(std::move(name));
  define_task(id, std::move(fn));
  return id;
}

MapFnId TaskRegistry::declare_map(std::string name) {
  maps_.push_back({std::move(name), nullptr});
  return MapFnId{static_cast<std::uint32_t>(maps_.size() - 1)};
}

void TaskRegistry::define_map(MapFnId id, MapFn fn) {
  if (!has_map(id)) {
    throw Error(ErrorCode::config, "define_map: undeclared map function " + std::to_string(id.value));
  }
  maps_[id.value].fn = std::move(fn);
}

MapFnId TaskRegistry::add_map(std::string name, MapFn fn) {
  const MapFnId id = declare_map(std::move(name));
  define_map(id, std::move(fn));
  return id;
}

std::optional<TaskTypeId> TaskRegistry::find_task(std::string_view name) const {
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    if (tasks_[i].name == name) {
      return TaskTypeId{static_cast<std::uint32_t>(i + 1)};
    }
  }
  return std::nullopt;
}

std::optional<MapFnId> TaskRegistry::find_map(std::string_view name) const {
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].name == name) {
      return MapFnId{static_cast<std::uint32_t>(i)};
    }
  }
  return std::nullopt;
}

void TaskRegistry::validate() const {
  if (tasks_.empty()) {
    throw Error(ErrorCode::config, "a program needs at least one task function");
  }
  std::set<std::string_view> seen;
  for (const auto& t : tasks_) {
    if (!seen.insert(t.name).second) {
      throw Error(ErrorCode::config, "duplicate task name '" + t.name + "'");
    }
    if (!t.fn) {
      throw Error(ErrorCode::config, "task '" + t.name + "' declared but never defined");
    }
  }
  seen.clear();
  for (const auto& m : maps_) {
    if (!seen.insert(m.name).second) {
      throw Error(ErrorCode::config, "duplicate map name '" + m.name + "'");
    }
    if (!m.fn) {
      throw Error(ErrorCode::config, "map '" + m.name + "' declared but never defined");
    }
  }
}

}  // namespace trees
