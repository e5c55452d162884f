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

#ifndef TREES_ARENA_HPP
#define TREES_ARENA_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trees/task_code.hpp"

namespace trees {

struct BufferId {
  std::uint32_t value = 0;
  friend constexpr bool operator==(BufferId, BufferId) = default;
};

/// Application shared memory: named fixed-length buffers of 64-bit integers
/// or doubles. The buffer set is fixed once a program is built; contents are
/// mutated by tasks under the epoch race contract.
class Arena {
 public:
  BufferId add_words(std::string name, std::vector<Word> init);
  BufferId add_reals(std::string name, std::vector<double> init);

  std::span<Word> words(BufferId id);
  std::span<const Word> words(BufferId id) const;
  std::span<double> reals(BufferId id);
  std::span<const double> reals(BufferId id) const;

  std::optional<BufferId> find(std::string_view name) const;
  std::size_t buffer_count() const noexcept { return buffers_.size(); }
  const std::string& name(BufferId id) const;
  bool is_words(BufferId id) const;

 private:
  struct Buffer {
    std::string name;
    std::variant<std::vector<Word>, std::vector<double>> data;
  };
  const Buffer& at(BufferId id) const;
  Buffer& at(BufferId id);

  std::vector<Buffer> buffers_;
};

/// Lowers `target` to `value` if smaller. Returns true iff it did.
inline bool atomic_min(Word& target, Word value) noexcept {
  std::atomic_ref<Word> ref(target);
  Word seen = ref.load(std::memory_order_relaxed);
  while (value < seen) {
    if (ref.compare_exchange_weak(seen, value, std::memory_order_relaxed)) {
      return true;
    }
  }
  return false;
}

inline Word atomic_fetch_add(Word& target, Word delta) noexcept {
  return std::atomic_ref<Word>(target).fetch_add(delta, std::memory_order_relaxed);
}

inline Word atomic_exchange(Word& target, Word value) noexcept {
  return std::atomic_ref<Word>(target).exchange(value, std::memory_order_relaxed);
}

}  // namespace trees

#endif  // TREES_ARENA_HPP
