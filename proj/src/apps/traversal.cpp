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

#include <set>
#include <sstream>

#include "trees/apps.hpp"
#include "trees/error.hpp"

namespace trees::apps {

void TreeSpec::validate() const {
  if (left.size() != right.size()) {
    throw Error(ErrorCode::config, "tree: left/right child arrays differ in length");
  }
  const auto n = static_cast<Word>(size());
  if (root == kNull) {
    return;
  }
  if (root < 0 || root >= n) {
    throw Error(ErrorCode::config, "tree: root index out of range");
  }
  std::set<Word> seen;
  std::vector<Word> pending{root};
  while (!pending.empty()) {
    const Word v = pending.back();
    pending.pop_back();
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::config, "tree: node " + std::to_string(v) + " reached twice");
    }
    for (Word c : {left[v], right[v]}) {
      if (c == kNull) {
        continue;
      }
      if (c < 0 || c >= n) {
        throw Error(ErrorCode::config, "tree: child index " + std::to_string(c) + " out of range");
      }
      pending.push_back(c);
    }
  }
}

TreeSpec example_tree() {
  // A=0, B=1, C=2, D=3, E=4, F=5
  return TreeSpec{{1, 3, 5, kNull, kNull, kNull}, {2, 4, kNull, kNull, kNull, kNull}, 0};
}

Program traversal_program(const TreeSpec& tree, TraversalOrder order) {
  tree.validate();
  const auto n = static_cast<Word>(tree.size());

  ProgramBuilder b;
  auto& reg = b.registry();
  auto& arena = b.arena();
  const BufferId left = arena.add_words("left", tree.left);
  const BufferId right = arena.add_words("right", tree.right);
  const BufferId seq = arena.add_words("visit_seq", std::vector<Word>(tree.size(), -1));
  const BufferId counter = arena.add_words("visit_counter", {0});

  auto visit = [=](Arena& a, Word node) {
    a.words(seq)[node] = atomic_fetch_add(a.words(counter)[0], 1);
  };

  const TaskTypeId preorder = reg.declare_task("preorder");
  const TaskTypeId postorder = reg.declare_task("postorder");
  const TaskTypeId visit_after = reg.declare_task("visitAfter");

  reg.define_task(preorder, [=](TaskContext& ctx) {
    const Word node = ctx.arg(0);
    if (node == kNull) {
      return;
    }
    Arena& a = ctx.arena();
    visit(a, node);
    ctx.fork(preorder, {a.words(right)[node]});
    ctx.fork(preorder, {a.words(left)[node]});
  });
  reg.define_task(postorder, [=](TaskContext& ctx) {
    const Word node = ctx.arg(0);
    if (node == kNull) {
      return;
    }
    Arena& a = ctx.arena();
    ctx.fork(postorder, {a.words(right)[node]});
    ctx.fork(postorder, {a.words(left)[node]});
    ctx.join(visit_after, {node});
  });
  reg.define_task(visit_after, [=](TaskContext& ctx) { visit(ctx.arena(), ctx.arg(0)); });

  b.root(order == TraversalOrder::pre ? preorder : postorder, {tree.root});
  b.extractor([=](const Arena& a, const RuntimeState&) {
    ProgramOutput out;
    const auto s = a.words(seq);
    out.words.assign(s.begin(), s.end());
    // text: node indices in visit order
    std::vector<Word> order(static_cast<std::size_t>(n), kNull);
    for (Word i = 0; i < n; ++i) {
      if (s[i] >= 0 && s[i] < n) {
        order[s[i]] = i;
      }
    }
    std::ostringstream text;
    bool first = true;
    for (Word v : order) {
      if (v != kNull) {
        text << (first ? "" : " ") << v;
        first = false;
      }
    }
    out.text = text.str();
    return out;
  });
  return std::move(b).build();
}

}  // namespace trees::apps
