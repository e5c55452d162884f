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

#include "trees/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <queue>

#include "trees/error.hpp"

namespace trees::oracles {

std::int64_t fib_iterative(int n) {
  std::int64_t a = 0;
  std::int64_t b = 1;
  for (int i = 0; i < n; ++i) {
    const std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return a;
}

std::int64_t fib_call_count(int n) {
  std::int64_t prev = 1;  // C(0)
  std::int64_t cur = 1;   // C(1)
  if (n == 0) {
    return prev;
  }
  for (int i = 2; i <= n; ++i) {
    const std::int64_t next = 1 + cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::int64_t fib_inner_calls(int n) {
  // inner = calls - leaves, and a binary call tree has leaves = inner + 1
  return (fib_call_count(n) - 1) / 2;
}

namespace {

void walk(const apps::TreeSpec& t, Word node, bool pre, std::vector<Word>& out) {
  if (node == kNull) {
    return;
  }
  if (pre) {
    out.push_back(node);
  }
  walk(t, t.left[node], pre, out);
  walk(t, t.right[node], pre, out);
  if (!pre) {
    out.push_back(node);
  }
}

}  // namespace

std::vector<Word> postorder_recursive(const apps::TreeSpec& tree) {
  std::vector<Word> out;
  walk(tree, tree.root, false, out);
  return out;
}

std::vector<Word> preorder_recursive(const apps::TreeSpec& tree) {
  std::vector<Word> out;
  walk(tree, tree.root, true, out);
  return out;
}

std::vector<Word> bfs_reference(const apps::GraphCSR& g, Word source) {
  std::vector<Word> dist(static_cast<std::size_t>(g.vertex_count()), kInfinity);
  std::deque<Word> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Word v = queue.front();
    queue.pop_front();
    for (Word e = g.row_offsets[v]; e < g.row_offsets[v + 1]; ++e) {
      const Word u = g.columns[e];
      if (dist[u] == kInfinity) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<Word> dijkstra_reference(const apps::GraphCSR& g, Word source) {
  std::vector<Word> dist(static_cast<std::size_t>(g.vertex_count()), kInfinity);
  using Item = std::pair<Word, Word>;  // (distance, vertex)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) {
      continue;
    }
    for (Word e = g.row_offsets[v]; e < g.row_offsets[v + 1]; ++e) {
      const Word u = g.columns[e];
      const Word nd = d + g.weights[e];
      if (nd < dist[u]) {
        dist[u] = nd;
        heap.push({nd, u});
      }
    }
  }
  return dist;
}

std::vector<Word> sorted_copy(std::span<const Word> values) {
  std::vector<Word> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<double>> dft_direct(std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      // reduce j*k mod n first so the angle stays small and accurate
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      acc += x[j] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace trees::oracles
