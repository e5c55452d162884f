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

#include "trees/task_args.hpp"

#include <string>

#include "trees/error.hpp"

namespace trees {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config: return "config";
    case ErrorCode::contract: return "contract";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::epoch_limit: return "epoch_limit";
    case ErrorCode::task_failure: return "task_failure";
    case ErrorCode::protocol: return "protocol";
    case ErrorCode::internal: return "internal";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

TaskArgs::TaskArgs(std::initializer_list<Arg> args) {
  if (args.size() > kArgWords) {
    throw Error(ErrorCode::contract, "task takes at most " + std::to_string(kArgWords) +
                                         " argument words, got " + std::to_string(args.size()));
  }
  for (const Arg& a : args) {
    if (a.handle_) {
      handle_mask_ |= 1u << size_;
    }
    words_[size_++] = a.word_;
  }
}

TaskArgs TaskArgs::from_words(std::span<const Word> words, std::uint32_t handle_mask) {
  if (words.size() > kArgWords) {
    throw Error(ErrorCode::contract, "task takes at most " + std::to_string(kArgWords) +
                                         " argument words, got " + std::to_string(words.size()));
  }
  TaskArgs out;
  for (Word w : words) {
    out.words_[out.size_++] = w;
  }
  out.handle_mask_ = handle_mask & ((1u << out.size_) - 1u);
  return out;
}

void TaskArgs::resolve_handles(Word base) noexcept {
  for (std::uint32_t i = 0; i < size_; ++i) {
    if (handle_mask_ & (1u << i)) {
      words_[i] += base;
    }
  }
  handle_mask_ = 0;
}

}  // namespace trees
