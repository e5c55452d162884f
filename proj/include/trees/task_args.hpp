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

#ifndef TREES_TASK_ARGS_HPP
#define TREES_TASK_ARGS_HPP

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "trees/task_code.hpp"

#ifndef TREES_ARG_WORDS
#define TREES_ARG_WORDS 4
#endif

namespace trees {

inline constexpr std::size_t kArgWords = TREES_ARG_WORDS;
static_assert(kArgWords >= 1 && kArgWords <= 32);

class TaskContext;
class TaskArgs;

/// Returned by fork. Names the child's task vector slot once the forking
/// work-group commits; until then it may only travel inside TaskArgs (join or
/// fork arguments), where the executor rewrites it to the final slot index.
/// A continuation reads the child's emitted value with
/// TaskContext::child_result(arg).
class ChildHandle {
 public:
  ChildHandle() = default;

 private:
  friend class TaskContext;
  friend class Arg;
  explicit constexpr ChildHandle(Word w) : word_(w) {}
  Word word_ = kNull;
};

/// One argument word, remembering whether it carries a ChildHandle.
class Arg {
 public:
  template <std::integral T>
  constexpr Arg(T value) : word_(static_cast<Word>(value)) {}  // NOLINT
  constexpr Arg(ChildHandle handle) : word_(handle.word_), handle_(true) {}  // NOLINT

 private:
  friend class TaskArgs;
  Word word_;
  bool handle_ = false;
};

/// Fixed-arity argument block of a task vector entry.
class TaskArgs {
 public:
  TaskArgs() = default;
  TaskArgs(std::initializer_list<Arg> args);

  /// Raw construction; bit i of handle_mask marks word i as a ChildHandle.
  static TaskArgs from_words(std::span<const Word> words, std::uint32_t handle_mask = 0);

  Word operator[](std::size_t i) const { return words_[i]; }
  std::size_t size() const noexcept { return size_; }
  std::span<const Word> words() const noexcept { return {words_.data(), size_}; }
  const std::array<Word, kArgWords>& raw() const noexcept { return words_; }
  std::uint32_t handle_mask() const noexcept { return handle_mask_; }

  /// Adds `base` to every handle word and clears the mask.
  void resolve_handles(Word base) noexcept;

  friend bool operator==(const TaskArgs&, const TaskArgs&) = default;

 private:
  std::array<Word, kArgWords> words_{};
  std::uint32_t size_ = 0;
  std::uint32_t handle_mask_ = 0;
};

/// One task vector slot.
struct TaskEntry {
  TaskCode code;
  std::array<Word, kArgWords> args{};
  Word result = 0;
};

}  // namespace trees

#endif  // TREES_TASK_ARGS_HPP
