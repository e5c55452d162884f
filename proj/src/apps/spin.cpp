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

namespace trees::apps {

Program spin_program() {
  ProgramBuilder b;
  auto& reg = b.registry();
  const TaskTypeId spin = reg.declare_task("spin");
  reg.define_task(spin, [=](TaskContext& ctx) { ctx.fork(spin, {}); });
  b.root(spin);
  return std::move(b).build();
}

}  // namespace trees::apps
