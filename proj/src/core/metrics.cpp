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

#include "trees/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "trees/error.hpp"

namespace trees {

Metrics record_epoch(Metrics m, const EpochTrace& trace) {
  m.epochs += 1;
  m.work_tasks += trace.valid_executed;
  m.launched_total += trace.launched;
  m.peak_next_free_core = std::max(m.peak_next_free_core, trace.next_free_core);
  return m;
}

Metrics record_map_drain(Metrics m, std::int64_t items) {
  m.map_drains += 1;
  m.work_map_items += items;
  return m;
}

double model_time(const PerfModelParams& q, ModelCase which) {
  if (q.p < 1 || q.w < 1 || q.v1 < 1 || q.vinf < 0 || q.t1 < 0 || q.tinf < 0) {
    throw Error(ErrorCode::config, "performance model needs P, W, V1 >= 1 and Vinf, T1, Tinf >= 0");
  }
  const double span = q.vinf * q.tinf;
  switch (which) {
    case ModelCase::scalar:
      return q.v1 * q.t1 / q.p + span;
    case ModelCase::best:
      return q.v1 * q.t1 / (q.p * q.w) + span;
    case ModelCase::pessimistic:
      return q.v1 * std::log2(q.w) * q.t1 / (q.p * q.w) + span;
    case ModelCase::worst: {
      if (q.depth < 0) {
        throw Error(ErrorCode::config, "branch nesting depth must be non-negative");
      }
      const double divergence = std::ldexp(1.0, q.depth);
      if (!(divergence < q.w)) {
        throw Error(ErrorCode::config, "worst-case model requires 2^D < W");
      }
      return q.v1 * divergence * q.t1 / (q.p * q.w) + span;
    }
  }
  throw Error(ErrorCode::config, "unknown model case");
}

SpaceBounds space_bounds(const Metrics& m) {
  const std::int64_t span = m.critical_path();
  if (span <= 0) {
    throw Error(ErrorCode::config, "space bounds need a non-empty critical path");
  }
  return SpaceBounds{(m.work_tasks + span - 1) / span, m.work_tasks};
}

}  // namespace trees
