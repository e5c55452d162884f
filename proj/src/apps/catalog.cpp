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

#include "trees/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trees/apps.hpp"
#include "trees/error.hpp"
#include "trees/input_formats.hpp"
#include "trees/oracles.hpp"

namespace trees::apps {

std::optional<std::string> AppOptions::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::int64_t AppOptions::get_int(const std::string& key, std::int64_t fallback) const {
  const auto v = get(key);
  if (!v) {
    return fallback;
  }
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(*v, &used);
    if (used != v->size()) {
      throw std::invalid_argument(*v);
    }
    return parsed;
  } catch (const std::exception&) {
    throw Error(ErrorCode::config, "option '" + key + "' expects an integer, got '" + *v + "'");
  }
}

std::vector<std::string> app_names() {
  return {"fib", "preorder", "postorder", "bfs", "sssp", "mergesort", "mergesort-map", "fft", "spin"};
}

namespace {

CheckOutcome compare_words(const std::vector<Word>& got, const std::vector<Word>& want) {
  if (got == want) {
    return {true, "matches oracle"};
  }
  if (got.size() != want.size()) {
    return {false, "length " + std::to_string(got.size()) + ", oracle " +
                       std::to_string(want.size())};
  }
  const auto at = std::mismatch(got.begin(), got.end(), want.begin()).first - got.begin();
  return {false, "index " + std::to_string(at) + ": got " + std::to_string(got[at]) +
                     ", oracle " + std::to_string(want[at])};
}

GraphCSR graph_input(const AppOptions& o) {
  if (auto path = o.get("input")) {
    return io::load_graph(*path);
  }
  const Word v = o.get_int("size", 1000);
  const Word e = o.get_int("edges", 8 * v);
  return random_graph(v, e, static_cast<std::uint64_t>(o.get_int("seed", 1)),
                      o.get_int("max_weight", 100));
}

std::vector<Word> array_input(const AppOptions& o) {
  if (auto path = o.get("input")) {
    return io::load_words(*path);
  }
  const Word n = o.get_int("size", 1024);
  if (n < 0) {
    throw Error(ErrorCode::config, "size must be non-negative");
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(o.get_int("seed", 1)));
  std::uniform_int_distribution<Word> value(-1'000'000, 1'000'000);
  std::vector<Word> out(static_cast<std::size_t>(n));
  for (Word& x : out) {
    x = value(rng);
  }
  return out;
}

std::vector<std::complex<double>> complex_input(const AppOptions& o) {
  if (auto path = o.get("input")) {
    return io::load_complex(*path);
  }
  const Word n = o.get_int("size", 256);
  if (n < 1) {
    throw Error(ErrorCode::config, "size must be positive");
  }
  std::mt19937_64 rng(static_cast<std::uint64_t>(o.get_int("seed", 1)));
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (auto& x : out) {
    const double re = value(rng);
    x = {re, value(rng)};
  }
  return out;
}

// Each node visited once, and every parent after (post) or before (pre) its children.
CheckOutcome check_traversal(const TreeSpec& tree, TraversalOrder order,
                             const std::vector<Word>& seq) {
  const auto expected = order == TraversalOrder::post ? oracles::postorder_recursive(tree)
                                                      : oracles::preorder_recursive(tree);
  std::vector<Word> visited;
  for (std::size_t v = 0; v < seq.size(); ++v) {
    if (seq[v] >= 0) {
      visited.push_back(static_cast<Word>(v));
    }
  }
  auto sorted_expected = expected;
  std::sort(sorted_expected.begin(), sorted_expected.end());
  if (visited != sorted_expected) {
    return {false, "visited node set differs from the recursive traversal"};
  }
  for (Word v : expected) {
    for (Word c : {tree.left[v], tree.right[v]}) {
      if (c == kNull) {
        continue;
      }
      const bool ok = order == TraversalOrder::post ? seq[v] > seq[c] : seq[v] < seq[c];
      if (!ok) {
        return {false, "node " + std::to_string(v) + " visited out of order with child " +
                           std::to_string(c)};
      }
    }
  }
  return {true, "visit order consistent with recursive traversal"};
}

}  // namespace

AppInstance make_app(const std::string& name, const AppOptions& o) {
  if (name == "fib") {
    const auto n = static_cast<int>(o.get_int("n", 10));
    return {name, fib_program(n), [n](const ProgramResult& r) {
              return compare_words(r.output.words, {oracles::fib_iterative(n)});
            }};
  }
  if (name == "preorder" || name == "postorder") {
    const TreeSpec tree = o.get("input") ? io::load_tree(*o.get("input")) : example_tree();
    const auto order = name == "preorder" ? TraversalOrder::pre : TraversalOrder::post;
    return {name, traversal_program(tree, order), [tree, order](const ProgramResult& r) {
              return check_traversal(tree, order, r.output.words);
            }};
  }
  if (name == "bfs" || name == "sssp") {
    const GraphCSR g = graph_input(o);
    const Word src = o.get_int("src", 0);
    if (name == "bfs") {
      return {name, bfs_program(g, src), [g, src](const ProgramResult& r) {
                return compare_words(r.output.words, oracles::bfs_reference(g, src));
              }};
    }
    return {name, sssp_program(g, src), [g, src](const ProgramResult& r) {
              return compare_words(r.output.words, oracles::dijkstra_reference(g, src));
            }};
  }
  if (name == "mergesort" || name == "mergesort-map") {
    const auto values = array_input(o);
    const auto variant = name == "mergesort" ? MergeVariant::naive : MergeVariant::map;
    return {name, mergesort_program(values, variant), [values](const ProgramResult& r) {
              return compare_words(r.output.words, oracles::sorted_copy(values));
            }};
  }
  if (name == "fft") {
    const auto x = complex_input(o);
    return {name, fft_program(x), [x](const ProgramResult& r) {
              const auto want = oracles::dft_direct(x);
              const auto got = unpack_complex(r.output.reals);
              double worst = 0;
              for (std::size_t i = 0; i < want.size(); ++i) {
                worst = std::max(worst, std::abs(got[i] - want[i]));
              }
              const bool ok = got.size() == want.size() && worst < 1e-9;
              return CheckOutcome{ok, "max abs error " + std::to_string(worst)};
            }};
  }
  if (name == "spin") {
    return {name, spin_program(), [](const ProgramResult&) {
              return CheckOutcome{false, "spin never halts"};
            }};
  }
  throw Error(ErrorCode::config, "unknown program '" + name + "'");
}

}  // namespace trees::apps
