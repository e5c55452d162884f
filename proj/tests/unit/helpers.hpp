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

#ifndef TREES_TESTS_HELPERS_HPP
#define TREES_TESTS_HELPERS_HPP

#include <doctest.h>

#include <functional>
#include <vector>

#include "trees/error.hpp"
#include "trees/program.hpp"

namespace trees::testing {

/// Runs `fn` and returns the code of the trees::Error it throws.
inline std::optional<ErrorCode> error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<std::int64_t> cen_sequence(const std::vector<EpochTrace>& trace) {
  std::vector<std::int64_t> out;
  for (const auto& e : trace) out.push_back(e.cen);
  return out;
}

inline std::vector<std::int64_t> launched_sequence(const std::vector<EpochTrace>& trace) {
  std::vector<std::int64_t> out;
  for (const auto& e : trace) out.push_back(e.launched);
  return out;
}

inline std::vector<std::int64_t> valid_sequence(const std::vector<EpochTrace>& trace) {
  std::vector<std::int64_t> out;
  for (const auto& e : trace) out.push_back(e.valid_executed);
  return out;
}

inline RunConfig parallel_config(unsigned workers, std::int64_t group = 256) {
  RunConfig cfg;
  cfg.backend.kind = BackendKind::bulk_parallel;
  cfg.backend.workers = workers;
  cfg.backend.group_size = group;
  return cfg;
}

}  // namespace trees::testing

#endif  // TREES_TESTS_HELPERS_HPP
