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

#ifndef TREES_INPUT_FORMATS_HPP
#define TREES_INPUT_FORMATS_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "trees/apps.hpp"

// Plain-text inputs. Blank lines and lines starting with '#' are skipped.
namespace trees::io {

/// Header "V E", then E lines "u v [w]" (directed; w defaults to 1).
apps::GraphCSR parse_graph(std::istream& in);
/// One integer per line.
std::vector<Word> parse_words(std::istream& in);
/// One "re [im]" pair per line.
std::vector<std::complex<double>> parse_complex(std::istream& in);
/// Lines "idx left right" with -1 for a missing child; the first line names
/// the root. Indices must cover 0..N-1 exactly once. An empty file is the
/// empty tree.
apps::TreeSpec parse_tree(std::istream& in);

apps::GraphCSR load_graph(const std::string& path);
std::vector<Word> load_words(const std::string& path);
std::vector<std::complex<double>> load_complex(const std::string& path);
apps::TreeSpec load_tree(const std::string& path);

}  // namespace trees::io

#endif  // TREES_INPUT_FORMATS_HPP
