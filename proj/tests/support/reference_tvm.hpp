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

#ifndef TREES_TESTS_REFERENCE_TVM_HPP
#define TREES_TESTS_REFERENCE_TVM_HPP

// Literal abstract machine: an ever-growing task vector, a stack of per-slot
// execution bit masks, and per-epoch fork and join masks. No NDRanges and no
// slot reuse. Used only as a test oracle.
//
// Each mask carries the epoch number the concrete runtime assigns it: a join
// mask keeps the label of the mask just popped, a fork mask gets that label
// plus one. The stack height is reported too; the two agree while every
// forking task also joins, and drift apart once fork-only epochs appear.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scripted.hpp"

namespace trees::testing {

struct ReferenceEpoch {
  std::int64_t cen = 0;        // epoch label of the popped mask
  std::vector<int> executed;   // sorted node ids
  std::int64_t height = 0;     // stack height of the popped mask, counting from 0
  friend bool operator==(const ReferenceEpoch& a, const ReferenceEpoch& b) {
    return a.cen == b.cen && a.executed == b.executed;
  }
};

inline std::vector<ReferenceEpoch> run_reference(const Script& script,
                                                 std::size_t epoch_limit = 100000) {
  std::vector<int> tv{script.root};
  struct Mask {
    std::int64_t label;
    std::vector<bool> bits;
  };
  std::vector<Mask> tms{{0, {true}}};
  std::vector<ReferenceEpoch> epochs;
  while (!tms.empty()) {
    if (epochs.size() >= epoch_limit) {
      throw std::runtime_error("reference interpreter: epoch limit");
    }
    ReferenceEpoch e;
    e.height = static_cast<std::int64_t>(tms.size()) - 1;
    e.cen = tms.back().label;
    std::vector<bool> task_mask = std::move(tms.back().bits);
    tms.pop_back();
    std::vector<bool> fork_mask;
    std::vector<bool> join_mask;
    const std::size_t width = tv.size();
    for (std::size_t core = 0; core < width && core < task_mask.size(); ++core) {
      if (!task_mask[core]) {
        continue;
      }
      const int node = tv[core];
      e.executed.push_back(node);
      for (int child : script.nodes[node].forks) {
        tv.push_back(child);
        fork_mask.resize(tv.size(), false);
        fork_mask[tv.size() - 1] = true;
      }
      if (script.nodes[node].join >= 0) {
        tv[core] = script.nodes[node].join;
        join_mask.resize(std::max(join_mask.size(), core + 1), false);
        join_mask[core] = true;
      }
    }
    auto any = [](const std::vector<bool>& m) {
      return std::find(m.begin(), m.end(), true) != m.end();
    };
    if (any(join_mask)) {
      tms.push_back({e.cen, std::move(join_mask)});
    }
    if (any(fork_mask)) {
      tms.push_back({e.cen + 1, std::move(fork_mask)});
    }
    std::sort(e.executed.begin(), e.executed.end());
    epochs.push_back(std::move(e));
  }
  return epochs;
}

/// Same (cen, sorted ids) view of a runtime execution log.
inline std::vector<ReferenceEpoch> epochs_from_log(const ScriptLog& log) {
  std::vector<ReferenceEpoch> out;
  std::size_t begin = 0;
  for (std::size_t end : log.epoch_ends) {
    ReferenceEpoch e;
    e.cen = -1;
    for (std::size_t i = begin; i < end; ++i) {
      e.executed.push_back(log.ids[i]);
      e.cen = log.cens[i];
    }
    std::sort(e.executed.begin(), e.executed.end());
    out.push_back(std::move(e));
    begin = end;
  }
  return out;
}

inline std::string describe(const std::vector<ReferenceEpoch>& epochs) {
  std::ostringstream out;
  for (const auto& e : epochs) {
    out << "\n  cen " << e.cen << ":";
    for (int id : e.executed) out << ' ' << id;
  }
  return out.str();
}

}  // namespace trees::testing

#endif  // TREES_TESTS_REFERENCE_TVM_HPP
