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

#include <doctest.h>

#include <random>

#include "../support/reference_tvm.hpp"
#include "../support/scripted.hpp"
#include "helpers.hpp"

using namespace trees;
using namespace trees::testing;

namespace {

std::vector<ReferenceEpoch> run_engine(const Script& s, RunConfig cfg = {}) {
  auto log = std::make_shared<ScriptLog>(s.nodes.size());
  cfg.observer = [log](const EpochTrace&, const EpochCounters&) {
    log->epoch_ends.push_back(log->count.load());
  };
  const auto r = run_program(script_program(s, log), cfg);
  REQUIRE(r.halted);
  REQUIRE(log->count.load() == s.nodes.size());
  auto epochs = epochs_from_log(*log);
  REQUIRE(epochs.size() == r.trace.size());
  for (std::size_t i = 0; i < epochs.size(); ++i) epochs[i].cen = r.trace[i].cen;
  return epochs;
}

}  // namespace

TEST_CASE("reference interpreter reproduces the example walk") {
  const auto ref = run_reference(postorder_script(apps::example_tree()));
  std::vector<std::int64_t> cens;
  std::vector<std::int64_t> heights;
  std::vector<std::size_t> sizes;
  for (const auto& e : ref) {
    cens.push_back(e.cen);
    heights.push_back(e.height);
    sizes.push_back(e.executed.size());
  }
  CHECK(cens == std::vector<std::int64_t>{0, 1, 2, 3, 2, 1, 0});
  CHECK(heights == cens);
  CHECK(sizes == std::vector<std::size_t>{1, 2, 4, 6, 3, 2, 1});
}

TEST_CASE("engine matches the reference interpreter on fixed scripts") {
  CHECK(run_engine(postorder_script(apps::example_tree())) ==
        run_reference(postorder_script(apps::example_tree())));
  for (int n = 0; n <= 12; ++n) {
    const auto s = fib_script(n);
    const auto ref = run_reference(s);
    CHECK(run_engine(s) == ref);
    for (const auto& e : ref) CHECK(e.height == e.cen);
  }
}

TEST_CASE("fork-only epochs advance the label but not the stack height") {
  ScriptBuilder b;
  const int leaf = b.add();
  const int mid = b.add({leaf});
  const int root = b.add({mid});
  const auto s = b.finish(root);
  const auto ref = run_reference(s);
  REQUIRE(ref.size() == 3);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK(ref[i].cen == static_cast<std::int64_t>(i));
    CHECK(ref[i].height == 0);
  }
  CHECK(run_engine(s) == ref);
}

TEST_CASE("engine matches the reference interpreter on random scripts") {
  std::mt19937_64 rng(20260101);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto s = random_script(rng, 2 + i % 6);
    const auto ref = run_reference(s);
    const auto seq = run_engine(s);
    CHECK_MESSAGE(seq == ref, "engine" << describe(seq) << "\nreference" << describe(ref));
    CHECK(run_engine(s, parallel_config(3, 4)) == ref);
    ++checked;
  }
  for (int i = 0; i < 40; ++i) {
    const auto s = postorder_script(random_tree(rng, 1 + i));
    CHECK(run_engine(s) == run_reference(s));
    ++checked;
  }
  CHECK(checked == 100);
}
