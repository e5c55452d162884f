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

#ifndef TREES_TRACE_IO_HPP
#define TREES_TRACE_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trees/metrics.hpp"
#include "trees/runtime_state.hpp"

namespace trees {

/// One epoch as an ordered JSON object. Field order is part of the format:
/// epoch_index, cen, ndrange_lo, ndrange_hi, launched, valid_executed, forked,
/// join_scheduled, map_scheduled, join_stack, ndrange_stack, next_free_core
/// (and "slots" when slot tracing is on).
nlohmann::ordered_json trace_to_json(const EpochTrace& trace);
EpochTrace trace_from_json(const nlohmann::ordered_json& j);

enum class MetricsDetail {
  invariant,  // fields identical across backends; used as the trace's last line
  full,       // adds atomic_ops and work_groups
};

nlohmann::ordered_json metrics_to_json(const Metrics& m, MetricsDetail detail);
std::string metrics_table(const Metrics& m);

/// JSON Lines: one object per epoch, then the metrics object.
void write_trace(std::ostream& out, const std::vector<EpochTrace>& trace, const Metrics& m);
std::string trace_jsonl(const std::vector<EpochTrace>& trace, const Metrics& m);

struct TraceComparison {
  bool identical = true;
  std::optional<std::int64_t> epoch_index;  // first diverging epoch
  std::string field;                        // first diverging field, if any
  std::string report;
};

/// Field-by-field comparison of two trace streams. Throws ErrorCode::parse
/// on a malformed line.
TraceComparison compare_traces(std::istream& actual, std::istream& golden);
TraceComparison compare_trace_files(const std::string& actual_path,
                                    const std::string& golden_path);

}  // namespace trees

#endif  // TREES_TRACE_IO_HPP
