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

#include <algorithm>
#include <bit>
#include <sstream>

#include "trees/apps.hpp"
#include "trees/error.hpp"

namespace trees::apps {

// Blocks of width 2^j live in buffer j % 2: leaves start in buf0 and every
// merge reads the level below and writes the other buffer, so no copy-back
// pass is needed.
Program mergesort_program(std::span<const Word> values, MergeVariant variant) {
  const std::size_t n = values.size();
  const std::size_t padded = n <= 1 ? n : std::bit_ceil(n);
  std::vector<Word> init(values.begin(), values.end());
  init.resize(padded, kInfinity);

  ProgramBuilder b;
  auto& arena = b.arena();
  const BufferId buf[2] = {arena.add_words("buf0", std::move(init)),
                           arena.add_words("buf1", std::vector<Word>(padded, 0))};

  auto& reg = b.registry();
  const TaskTypeId sort = reg.declare_task("sort");
  const TaskTypeId merge = reg.declare_task("merge");
  const MapFnId merge_kernel = reg.declare_map("merge_kernel");

  reg.define_task(sort, [=](TaskContext& ctx) {
    const Word lo = ctx.arg(0);
    const Word width = ctx.arg(1);
    if (width <= 1) {
      return;
    }
    const Word half = width / 2;
    ctx.fork(sort, {lo + half, half});
    ctx.fork(sort, {lo, half});
    ctx.join(merge, {lo, width});
  });

  reg.define_task(merge, [=](TaskContext& ctx) {
    const Word lo = ctx.arg(0);
    const Word width = ctx.arg(1);
    if (variant == MergeVariant::map) {
      ctx.map(merge_kernel, {lo, width}, width);
      return;
    }
    const int level = std::countr_zero(static_cast<std::uint64_t>(width));
    Arena& a = ctx.arena();
    const auto src = a.words(buf[(level - 1) % 2]);
    auto dst = a.words(buf[level % 2]);
    const Word half = width / 2;
    std::merge(src.begin() + lo, src.begin() + lo + half, src.begin() + lo + half,
               src.begin() + lo + width, dst.begin() + lo);
  });

  // Item i places element lo+i at its rank in the merged block: its index in
  // its own run plus the count of elements in the sibling run ordered before
  // it (ties go to the left run, which keeps the merge stable).
  reg.define_map(merge_kernel, [=](Arena& a, const TaskArgs& args, std::int64_t i) {
    const Word lo = args[0];
    const Word width = args[1];
    const Word half = width / 2;
    const int level = std::countr_zero(static_cast<std::uint64_t>(width));
    const auto src = a.words(buf[(level - 1) % 2]);
    auto dst = a.words(buf[level % 2]);
    const auto left = src.subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(half));
    const auto right =
        src.subspan(static_cast<std::size_t>(lo + half), static_cast<std::size_t>(half));
    Word rank = 0;
    Word x = 0;
    if (i < half) {
      x = left[i];
      rank = i + (std::lower_bound(right.begin(), right.end(), x) - right.begin());
    } else {
      x = right[i - half];
      rank = (i - half) + (std::upper_bound(left.begin(), left.end(), x) - left.begin());
    }
    dst[lo + rank] = x;
  });

  b.root(sort, {0, static_cast<Word>(padded)});
  b.extractor([=](const Arena& a, const RuntimeState&) {
    const int levels = padded <= 1 ? 0 : std::countr_zero(padded);
    const auto out = a.words(buf[levels % 2]).first(n);
    ProgramOutput r;
    r.words.assign(out.begin(), out.end());
    std::ostringstream text;
    for (std::size_t i = 0; i < out.size(); ++i) {
      text << (i ? " " : "") << out[i];
    }
    r.text = text.str();
    return r;
  });
  return std::move(b).build();
}

}  // namespace trees::apps
