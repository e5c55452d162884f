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

#ifndef TREES_APPS_HPP
#define TREES_APPS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "trees/program.hpp"

namespace trees::apps {

/// Binary tree over node indices; kNull marks a missing child.
struct TreeSpec {
  std::vector<Word> left;
  std::vector<Word> right;
  Word root = kNull;

  std::size_t size() const noexcept { return left.size(); }
  /// Throws ErrorCode::config on out-of-range children, cycles or shared nodes.
  void validate() const;
};

/// The six-node example tree A(B, C), B(D, E), C(F, -), with A..F = 0..5.
TreeSpec example_tree();

/// Directed graph in compressed sparse row form. `weights` is empty for
/// unweighted graphs.
struct GraphCSR {
  std::vector<Word> row_offsets;
  std::vector<Word> columns;
  std::vector<Word> weights;

  Word vertex_count() const noexcept {
    return row_offsets.empty() ? 0 : static_cast<Word>(row_offsets.size() - 1);
  }
  Word edge_count() const noexcept { return static_cast<Word>(columns.size()); }
  void validate(bool weighted) const;
};

struct Edge {
  Word from = 0;
  Word to = 0;
  Word weight = 1;
};

GraphCSR make_csr(Word vertices, std::span<const Edge> edges, bool weighted);

/// Uniform random directed multigraph with `edges` edges and weights in
/// [0, max_weight].
GraphCSR random_graph(Word vertices, Word edges, std::uint64_t seed, Word max_weight);

enum class TraversalOrder { pre, post };
enum class MergeVariant { naive, map };

/// fib(n) by fork/fork/join; the root slot emits the value. 0 <= n <= 40.
Program fib_program(int n);

/// Visit sequence numbers per node, in words; unvisited nodes hold -1.
Program traversal_program(const TreeSpec& tree, TraversalOrder order);

/// Distances in words; unreachable vertices hold kInfinity.
Program bfs_program(const GraphCSR& graph, Word source);
Program sssp_program(const GraphCSR& graph, Word source);

/// Sorted copy of `values` in words.
Program mergesort_program(std::span<const Word> values, MergeVariant variant);

/// Forward DFT of `x`; reals hold interleaved (re, im). Length must be a power of two.
Program fft_program(std::span<const std::complex<double>> x);

/// A task that forks a copy of itself forever.
Program spin_program();

std::vector<std::complex<double>> unpack_complex(std::span<const double> interleaved);

}  // namespace trees::apps

#endif  // TREES_APPS_HPP
