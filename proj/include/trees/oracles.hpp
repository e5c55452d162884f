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

#ifndef TREES_ORACLES_HPP
#define TREES_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "trees/apps.hpp"

// Straightforward sequential reference implementations used by check mode
// and by the test suites. None of them touches the runtime.
namespace trees::oracles {

std::int64_t fib_iterative(int n);
/// Activations of naive recursive fib: C(n) = 1 + C(n-1) + C(n-2), C(0) = C(1) = 1.
std::int64_t fib_call_count(int n);
/// Activations with n >= 2 (each schedules one continuation).
std::int64_t fib_inner_calls(int n);

std::vector<Word> postorder_recursive(const apps::TreeSpec& tree);
std::vector<Word> preorder_recursive(const apps::TreeSpec& tree);

std::vector<Word> bfs_reference(const apps::GraphCSR& g, Word source);
std::vector<Word> dijkstra_reference(const apps::GraphCSR& g, Word source);

std::vector<Word> sorted_copy(std::span<const Word> values);

std::vector<std::complex<double>> dft_direct(std::span<const std::complex<double>> x);

}  // namespace trees::oracles

#endif  // TREES_ORACLES_HPP
