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

#include "trees/apps.hpp"

#include "trees/error.hpp"

namespace trees::apps {

Program fib_program(int n) {
  if (n < 0 || n > 40) {
    throw Error(ErrorCode::config, "fib: n must be in [0, 40], got " + std::to_string(n));
  }
  ProgramBuilder b;
  auto& reg = b.registry();
  const TaskTypeId fib = reg.declare_task("fib");
  const TaskTypeId sum = reg.declare_task("sum");

  reg.define_task(fib, [=](TaskContext& ctx) {
    const Word k = ctx.arg(0);
    if (k < 2) {
      ctx.emit(k);
      return;
    }
    const ChildHandle a = ctx.fork(fib, {k - 1});
    const ChildHandle c = ctx.fork(fib, {k - 2});
    ctx.join(sum, {a, c});
  });
  reg.define_task(sum, [](TaskContext& ctx) {
    ctx.emit(ctx.child_result(ctx.arg(0)) + ctx.child_result(ctx.arg(1)));
  });

  b.root(fib, {n});
  b.extractor([](const Arena&, const RuntimeState& state) {
    const Word v = state.tv[0].result;
    return ProgramOutput{{v}, {}, std::to_string(v)};
  });
  return std::move(b).build();
}

}  // namespace trees::apps
