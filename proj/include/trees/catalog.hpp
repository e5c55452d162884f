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

#ifndef TREES_CATALOG_HPP
#define TREES_CATALOG_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trees/program.hpp"

namespace trees::apps {

/// String options naming an application instance (n, input, src, size,
/// edges, seed, max_weight).
class AppOptions {
 public:
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

struct CheckOutcome {
  bool ok = false;
  std::string detail;
};

struct AppInstance {
  std::string name;
  Program program;
  /// Compares a run's output with the app's sequential oracle.
  std::function<CheckOutcome(const ProgramResult&)> check;
};

/// Shipped programs: fib, preorder, postorder, bfs, sssp, mergesort,
/// mergesort-map, fft, spin.
std::vector<std::string> app_names();

/// Throws ErrorCode::config for unknown names or bad options.
AppInstance make_app(const std::string& name, const AppOptions& options);

}  // namespace trees::apps

#endif  // TREES_CATALOG_HPP
