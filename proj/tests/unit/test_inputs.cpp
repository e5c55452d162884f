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

#include <sstream>

#include "helpers.hpp"
#include "trees/input_formats.hpp"
#include "trees/oracles.hpp"

using namespace trees;
using trees::testing::error_code_of;

TEST_CASE("graph text format") {
  std::istringstream in("# path\n3 2\n0 1 5\n1 2\n");
  const auto g = io::parse_graph(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(oracles::dijkstra_reference(g, 0) == std::vector<Word>{0, 5, 6});
  std::istringstream bad("3 1\n0 7\n");
  CHECK(error_code_of([&] { (void)io::parse_graph(bad); }) == ErrorCode::parse);
  std::istringstream short_edges("3 2\n0 1\n");
  CHECK(error_code_of([&] { (void)io::parse_graph(short_edges); }) == ErrorCode::parse);
}

TEST_CASE("word and complex lists") {
  std::istringstream w("3 -1\n 7\n");
  CHECK(io::parse_words(w) == std::vector<Word>{3, -1, 7});
  std::istringstream junk("1 x 2");
  CHECK(error_code_of([&] { (void)io::parse_words(junk); }) == ErrorCode::parse);
  std::istringstream c("1 0\n0.5\n-2 3\n");
  const auto z = io::parse_complex(c);
  REQUIRE(z.size() == 3);
  CHECK(z[1] == std::complex<double>(0.5, 0));
  CHECK(z[2] == std::complex<double>(-2, 3));
}

TEST_CASE("tree text format") {
  std::istringstream in("0 1 2\n1 3 4\n2 5 -1\n3 -1 -1\n4 -1 -1\n5 -1 -1\n");
  const auto t = io::parse_tree(in);
  const auto ref = apps::example_tree();
  CHECK(t.left == ref.left);
  CHECK(t.right == ref.right);
  CHECK(t.root == ref.root);
  std::istringstream empty("");
  CHECK(io::parse_tree(empty).root == kNull);
  CHECK(error_code_of([] { (void)io::load_tree("/nonexistent/trees.tree"); }) == ErrorCode::io);
}
