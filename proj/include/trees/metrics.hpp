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

#ifndef TREES_METRICS_HPP
#define TREES_METRICS_HPP

#include <cstdint>

#include "trees/runtime_state.hpp"

namespace trees {

/// Work and critical-path accounting for one run. Work is counted in valid
/// task executions; a joined slot that runs again counts again.
struct Metrics {
  std::int64_t epochs = 0;
  std::int64_t map_drains = 0;
  std::int64_t work_tasks = 0;
  std::int64_t work_map_items = 0;
  std::int64_t launched_total = 0;
  std::int64_t peak_next_free_core = 0;
  std::int64_t work_groups = 0;
  std::int64_t atomic_ops = 0;  // fetch-adds on next_free_core
  std::int64_t lock_ops = 0;

  double utilization() const noexcept {
    return launched_total > 0
               ? static_cast<double>(work_tasks) / static_cast<double>(launched_total)
               : 0.0;
  }
  std::int64_t critical_path() const noexcept { return epochs + map_drains; }

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics record_epoch(Metrics m, const EpochTrace& trace);
Metrics record_map_drain(Metrics m, std::int64_t items);

struct PerfModelParams {
  double t1 = 0;    // work
  double tinf = 0;  // critical path
  double p = 1;     // processors
  double w = 1;     // SIMD width
  double v1 = 1;    // work overhead factor
  double vinf = 0;  // critical-path overhead factor
  int depth = 0;    // max branch nesting, worst case only
};

enum class ModelCase { scalar, best, pessimistic, worst };

/// Modeled execution time:
///   scalar       V1*T1/P + Vinf*Tinf
///   best         V1*T1/(P*W) + Vinf*Tinf
///   pessimistic  V1*log2(W)*T1/(P*W) + Vinf*Tinf
///   worst        V1*2^D*T1/(P*W) + Vinf*Tinf, requires 2^D < W
double model_time(const PerfModelParams& params, ModelCase which);

struct SpaceBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

/// (ceil(T1 / Tinf), T1) in task-vector slots.
SpaceBounds space_bounds(const Metrics& m);

}  // namespace trees

#endif  // TREES_METRICS_HPP
