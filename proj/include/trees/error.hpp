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

#ifndef TREES_ERROR_HPP
#define TREES_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace trees {

enum class ErrorCode {
  config,        // bad configuration or program declaration
  contract,      // primitive used outside its contract
  capacity,      // task vector exhausted
  epoch_limit,   // run exceeded its epoch budget
  task_failure,  // task or map body threw
  protocol,      // host protocol step called in the wrong state
  internal,      // runtime invariant broken
  io,
  parse,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trees

#endif  // TREES_ERROR_HPP
