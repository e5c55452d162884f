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

#include "trees/input_formats.hpp"

#include <fstream>
#include <sstream>

#include "trees/error.hpp"

namespace trees::io {

namespace {

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    lines.emplace_back(number, line);
  }
  return lines;
}

[[noreturn]] void bad_line(std::size_t number, const std::string& what) {
  throw Error(ErrorCode::parse, "line " + std::to_string(number) + ": " + what);
}

template <typename T>
std::vector<T> numbers_on(const std::pair<std::size_t, std::string>& line) {
  std::istringstream s(line.second);
  std::vector<T> out;
  T v{};
  while (s >> v) {
    out.push_back(v);
  }
  if (!s.eof()) {
    bad_line(line.first, "expected numbers, got '" + line.second + "'");
  }
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw Error(ErrorCode::io, "cannot open input '" + path + "'");
  }
  return f;
}

}  // namespace

apps::GraphCSR parse_graph(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) {
    throw Error(ErrorCode::parse, "graph: missing 'V E' header");
  }
  const auto header = numbers_on<Word>(lines[0]);
  if (header.size() != 2 || header[0] < 1 || header[1] < 0) {
    bad_line(lines[0].first, "graph header must be 'V E' with V >= 1");
  }
  if (static_cast<Word>(lines.size() - 1) != header[1]) {
    throw Error(ErrorCode::parse, "graph: header promises " + std::to_string(header[1]) +
                                      " edges, found " + std::to_string(lines.size() - 1));
  }
  std::vector<apps::Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = numbers_on<Word>(lines[i]);
    if (f.size() != 2 && f.size() != 3) {
      bad_line(lines[i].first, "edge must be 'u v [w]'");
    }
    const apps::Edge e{f[0], f[1], f.size() == 3 ? f[2] : 1};
    if (e.from < 0 || e.from >= header[0] || e.to < 0 || e.to >= header[0]) {
      bad_line(lines[i].first, "edge endpoint out of range");
    }
    if (e.weight < 0) {
      bad_line(lines[i].first, "negative edge weight");
    }
    edges.push_back(e);
  }
  return apps::make_csr(header[0], edges, true);
}

std::vector<Word> parse_words(std::istream& in) {
  std::vector<Word> out;
  for (const auto& line : content_lines(in)) {
    const auto f = numbers_on<Word>(line);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::vector<std::complex<double>> parse_complex(std::istream& in) {
  std::vector<std::complex<double>> out;
  for (const auto& line : content_lines(in)) {
    const auto f = numbers_on<double>(line);
    if (f.empty() || f.size() > 2) {
      bad_line(line.first, "expected 're [im]'");
    }
    out.emplace_back(f[0], f.size() == 2 ? f[1] : 0.0);
  }
  return out;
}

apps::TreeSpec parse_tree(std::istream& in) {
  const auto lines = content_lines(in);
  apps::TreeSpec t;
  if (lines.empty()) {
    return t;
  }
  const std::size_t n = lines.size();
  t.left.assign(n, kNull);
  t.right.assign(n, kNull);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = numbers_on<Word>(lines[i]);
    if (f.size() != 3) {
      bad_line(lines[i].first, "tree line must be 'idx left right'");
    }
    if (f[0] < 0 || f[0] >= static_cast<Word>(n) || seen[f[0]]) {
      bad_line(lines[i].first, "node index missing, out of range or repeated");
    }
    seen[f[0]] = true;
    t.left[f[0]] = f[1] < 0 ? kNull : f[1];
    t.right[f[0]] = f[2] < 0 ? kNull : f[2];
    if (i == 0) {
      t.root = f[0];
    }
  }
  try {
    t.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, e.what());
  }
  return t;
}

apps::GraphCSR load_graph(const std::string& path) {
  auto f = open(path);
  return parse_graph(f);
}

std::vector<Word> load_words(const std::string& path) {
  auto f = open(path);
  return parse_words(f);
}

std::vector<std::complex<double>> load_complex(const std::string& path) {
  auto f = open(path);
  return parse_complex(f);
}

apps::TreeSpec load_tree(const std::string& path) {
  auto f = open(path);
  return parse_tree(f);
}

}  // namespace trees::io
