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

#include "trees/trace_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "trees/error.hpp"

namespace trees {

using nlohmann::ordered_json;

ordered_json trace_to_json(const EpochTrace& t) {
  ordered_json j;
  j["epoch_index"] = t.epoch_index;
  j["cen"] = t.cen;
  j["ndrange_lo"] = t.ndrange.lo;
  j["ndrange_hi"] = t.ndrange.hi;
  j["launched"] = t.launched;
  j["valid_executed"] = t.valid_executed;
  j["forked"] = t.forked;
  j["join_scheduled"] = t.join_scheduled;
  j["map_scheduled"] = t.map_scheduled;
  j["join_stack"] = t.join_stack;
  auto ranges = ordered_json::array();
  for (const NDRange& r : t.ndrange_stack) {
    ranges.push_back({r.lo, r.hi});
  }
  j["ndrange_stack"] = std::move(ranges);
  j["next_free_core"] = t.next_free_core;
  if (t.slots) {
    auto slots = ordered_json::array();
    for (const SlotSnapshot& s : *t.slots) {
      slots.push_back({s.slot, s.epoch, s.type});
    }
    j["slots"] = std::move(slots);
  }
  return j;
}

EpochTrace trace_from_json(const ordered_json& j) {
  try {
    EpochTrace t;
    t.epoch_index = j.at("epoch_index").get<std::int64_t>();
    t.cen = j.at("cen").get<std::int64_t>();
    t.ndrange = {j.at("ndrange_lo").get<std::int64_t>(), j.at("ndrange_hi").get<std::int64_t>()};
    t.launched = j.at("launched").get<std::int64_t>();
    t.valid_executed = j.at("valid_executed").get<std::int64_t>();
    t.forked = j.at("forked").get<std::int64_t>();
    t.join_scheduled = j.at("join_scheduled").get<bool>();
    t.map_scheduled = j.at("map_scheduled").get<bool>();
    t.join_stack = j.at("join_stack").get<std::vector<std::int64_t>>();
    for (const auto& r : j.at("ndrange_stack")) {
      t.ndrange_stack.push_back({r.at(0).get<std::int64_t>(), r.at(1).get<std::int64_t>()});
    }
    t.next_free_core = j.at("next_free_core").get<std::int64_t>();
    if (j.contains("slots")) {
      std::vector<SlotSnapshot> slots;
      for (const auto& s : j.at("slots")) {
        slots.push_back({s.at(0).get<std::int64_t>(), s.at(1).get<std::int64_t>(),
                         s.at(2).get<std::uint32_t>()});
      }
      t.slots = std::move(slots);
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("malformed trace record: ") + e.what());
  }
}

ordered_json metrics_to_json(const Metrics& m, MetricsDetail detail) {
  ordered_json j;
  j["type"] = "metrics";
  j["epochs"] = m.epochs;
  j["map_drains"] = m.map_drains;
  j["critical_path"] = m.critical_path();
  j["work_tasks"] = m.work_tasks;
  j["work_map_items"] = m.work_map_items;
  j["launched_total"] = m.launched_total;
  j["utilization"] = m.utilization();
  j["peak_next_free_core"] = m.peak_next_free_core;
  j["lock_ops"] = m.lock_ops;
  if (detail == MetricsDetail::full) {
    j["work_groups"] = m.work_groups;
    j["atomic_ops"] = m.atomic_ops;
  }
  return j;
}

std::string metrics_table(const Metrics& m) {
  std::ostringstream out;
  auto row = [&](const char* name, const auto& value) {
    out << "  " << std::left << std::setw(22) << name << value << '\n';
  };
  out << "metrics\n";
  row("epochs", m.epochs);
  row("map drains", m.map_drains);
  row("critical path (T_inf)", m.critical_path());
  row("work tasks (T_1)", m.work_tasks);
  row("work map items", m.work_map_items);
  row("launched total", m.launched_total);
  row("utilization", m.utilization());
  row("peak nextFreeCore", m.peak_next_free_core);
  row("work groups", m.work_groups);
  row("atomic ops", m.atomic_ops);
  row("lock ops", m.lock_ops);
  return out.str();
}

void write_trace(std::ostream& out, const std::vector<EpochTrace>& trace, const Metrics& m) {
  for (const EpochTrace& t : trace) {
    out << trace_to_json(t).dump() << '\n';
  }
  out << metrics_to_json(m, MetricsDetail::invariant).dump() << '\n';
}

std::string trace_jsonl(const std::vector<EpochTrace>& trace, const Metrics& m) {
  std::ostringstream out;
  write_trace(out, trace, m);
  return out.str();
}

namespace {

struct ParsedTrace {
  std::vector<ordered_json> epochs;
  std::vector<ordered_json> other;  // metrics line(s)
};

ParsedTrace parse_stream(std::istream& in, const char* which) {
  ParsedTrace p;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::parse, std::string(which) + " line " + std::to_string(number) +
                                        ": " + e.what());
    }
    if (!j.is_object()) {
      throw Error(ErrorCode::parse, std::string(which) + " line " + std::to_string(number) +
                                        ": not a JSON object");
    }
    if (j.contains("epoch_index")) {
      trace_from_json(j);  // shape check
      p.epochs.push_back(std::move(j));
    } else {
      p.other.push_back(std::move(j));
    }
  }
  return p;
}

// First differing field of two objects, in golden field order.
std::optional<std::string> first_difference(const ordered_json& actual,
                                            const ordered_json& golden) {
  for (const auto& [key, value] : golden.items()) {
    if (!actual.contains(key)) {
      return key;
    }
    if (actual.at(key) != value) {
      return key;
    }
  }
  for (const auto& [key, value] : actual.items()) {
    if (!golden.contains(key)) {
      return key;
    }
  }
  return std::nullopt;
}

}  // namespace

TraceComparison compare_traces(std::istream& actual_in, std::istream& golden_in) {
  const ParsedTrace actual = parse_stream(actual_in, "actual");
  const ParsedTrace golden = parse_stream(golden_in, "golden");
  TraceComparison c;
  const std::size_t common = std::min(actual.epochs.size(), golden.epochs.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto field = first_difference(actual.epochs[i], golden.epochs[i])) {
      c.identical = false;
      c.epoch_index = static_cast<std::int64_t>(i);
      c.field = *field;
      auto show = [&](const ordered_json& j) {
        return j.contains(*field) ? j.at(*field).dump() : std::string("<missing>");
      };
      c.report = "epoch " + std::to_string(i) + ": field '" + *field + "' differs (actual " +
                 show(actual.epochs[i]) + ", golden " + show(golden.epochs[i]) + ")";
      return c;
    }
  }
  if (actual.epochs.size() != golden.epochs.size()) {
    c.identical = false;
    c.epoch_index = static_cast<std::int64_t>(common);
    c.report = "length mismatch: actual has " + std::to_string(actual.epochs.size()) +
               " epochs, golden has " + std::to_string(golden.epochs.size()) +
               "; first unmatched epoch index " + std::to_string(common);
    return c;
  }
  if (actual.other.size() != golden.other.size()) {
    c.identical = false;
    c.report = "length mismatch: metrics lines differ in count";
    return c;
  }
  for (std::size_t i = 0; i < golden.other.size(); ++i) {
    if (auto field = first_difference(actual.other[i], golden.other[i])) {
      c.identical = false;
      c.field = *field;
      c.report = "metrics: field '" + *field + "' differs";
      return c;
    }
  }
  c.report = "identical (" + std::to_string(golden.epochs.size()) + " epochs)";
  return c;
}

TraceComparison compare_trace_files(const std::string& actual_path,
                                    const std::string& golden_path) {
  std::ifstream actual(actual_path);
  if (!actual) {
    throw Error(ErrorCode::io, "cannot open trace '" + actual_path + "'");
  }
  std::ifstream golden(golden_path);
  if (!golden) {
    throw Error(ErrorCode::io, "cannot open trace '" + golden_path + "'");
  }
  return compare_traces(actual, golden);
}

}  // namespace trees
