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

#ifndef TREES_TASK_CODE_HPP
#define TREES_TASK_CODE_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "trees/error.hpp"

namespace trees {

/// Application-visible machine word: argument, emitted value, arena element.
using Word = std::int64_t;

/// NULL reference in index-based application data (all bits set).
inline constexpr Word kNull = -1;
/// Unreached distance / padding sentinel.
inline constexpr Word kInfinity = std::numeric_limits<Word>::max();

/// 1-based task function number. 0 is reserved for the invalid code.
struct TaskTypeId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(TaskTypeId, TaskTypeId) = default;
};

/// 0-based map function number; separate id space from task types.
struct MapFnId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(MapFnId, MapFnId) = default;
};

/// Packed (epoch, task type) word stored in each task vector slot:
/// code = epoch * numTaskTypes + type, with 0 meaning "invalid".
struct TaskCode {
  std::uint64_t value = 0;

  constexpr bool is_invalid() const noexcept { return value == 0; }
  friend constexpr auto operator<=>(TaskCode, TaskCode) = default;
};

inline constexpr TaskCode kInvalidCode{};

struct DecodedTask {
  std::int64_t epoch = 0;
  TaskTypeId type;
  friend constexpr bool operator==(const DecodedTask&, const DecodedTask&) = default;
};

constexpr TaskCode encode_task(std::int64_t epoch, TaskTypeId type,
                               std::uint32_t num_task_types) {
  if (type.value < 1 || type.value > num_task_types) {
    throw Error(ErrorCode::contract,
                "task type " + std::to_string(type.value) + " outside [1, " +
                    std::to_string(num_task_types) + "]");
  }
  if (epoch < 0) {
    throw Error(ErrorCode::contract, "negative epoch number");
  }
  return TaskCode{static_cast<std::uint64_t>(epoch) * num_task_types + type.value};
}

/// Inverse of encode_task. Undefined for the invalid code.
constexpr DecodedTask decode_task(TaskCode code, std::uint32_t num_task_types) {
  if (code.is_invalid()) {
    throw Error(ErrorCode::contract, "cannot decode the invalid task code");
  }
  const std::uint64_t v = code.value - 1;
  return DecodedTask{static_cast<std::int64_t>(v / num_task_types),
                     TaskTypeId{static_cast<std::uint32_t>(v % num_task_types + 1)}};
}

/// True iff the slot holding `code` runs in epoch `cen`.
constexpr bool is_runnable(TaskCode code, std::int64_t cen,
                           std::uint32_t num_task_types) noexcept {
  if (code.is_invalid() || cen < 0) {
    return false;
  }
  const auto n = static_cast<std::uint64_t>(num_task_types);
  const auto c = static_cast<std::uint64_t>(cen);
  return c * n + 1 <= code.value && code.value <= (c + 1) * n;
}

/// Inclusive, contiguous range of task vector slots launched together.
struct NDRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  constexpr std::int64_t size() const noexcept { return hi - lo + 1; }
  friend constexpr bool operator==(const NDRange&, const NDRange&) = default;
};

}  // namespace trees

#endif  // TREES_TASK_CODE_HPP
