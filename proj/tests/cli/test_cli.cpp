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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout and the exit status.
Outcome cli(const std::string& args) {
  const std::string cmd = std::string(TREES_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) o.out += buf.data();
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

const std::string kData = TREES_TEST_DATA_DIR;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int count_lines(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("postorder trace has one line per epoch plus metrics") {
  const auto trace = temp_path("trees_cli_post.jsonl");
  const auto o = cli("run --program postorder --input " + kData + "/example.tree --backend seq --trace " +
                     trace);
  CHECK(o.code == 0);
  CHECK(count_lines(trace) == 8);
  CHECK(cli("compare-trace " + trace + " " + kData + "/example_postorder.golden.jsonl").code == 0);
  std::filesystem::remove(trace);
}

TEST_CASE("fib with oracle check") {
  const auto o = cli("run --program fib --n 20 --check");
  CHECK(o.code == 0);
  CHECK(o.out.find("result: 6765") != std::string::npos);
  CHECK(o.out.find("check: ok") != std::string::npos);
}

TEST_CASE("bfs on the path graph") {
  const auto o = cli("run --program bfs --input " + kData + "/path5.graph --src 0 --check");
  CHECK(o.code == 0);
  CHECK(o.out.find("result: 0 1 2 3 4") != std::string::npos);
}

TEST_CASE("golden comparison through run") {
  CHECK(cli("run -p postorder --golden " + kData + "/example_postorder.golden.jsonl").code == 0);
  CHECK(cli("run -p postorder --backend par --workers 4 --golden " + kData +
            "/example_postorder.golden.jsonl")
            .code == 0);
  CHECK(cli("run -p preorder --golden " + kData + "/example_postorder.golden.jsonl").code == 4);
}

TEST_CASE("compare-trace reports divergence") {
  const std::string golden = kData + "/example_postorder.golden.jsonl";
  std::ifstream in(golden);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 8);

  const auto truncated = temp_path("trees_cli_trunc.jsonl");
  {
    std::ofstream out(truncated);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i < 4 || i == 7) out << lines[i] << "\n";
    }
  }
  const auto t = cli("compare-trace " + truncated + " " + golden);
  CHECK(t.code == 1);
  CHECK(t.out.find("epoch index 4") != std::string::npos);

  const auto longer = temp_path("trees_cli_long.jsonl");
  {
    std::ofstream out(longer);
    for (std::size_t i = 0; i < 7; ++i) out << lines[i] << "\n";
    out << lines[6] << "\n" << lines[7] << "\n";
  }
  const auto l = cli("compare-trace " + longer + " " + golden);
  CHECK(l.code == 1);
  CHECK(l.out.find("length mismatch") != std::string::npos);

  const auto junk = temp_path("trees_cli_junk.jsonl");
  std::ofstream(junk) << "{oops\n";
  CHECK(cli("compare-trace " + junk + " " + golden).code == 2);
  CHECK(cli("compare-trace " + golden + " /nonexistent/golden.jsonl").code == 2);
  for (const auto& p : {truncated, longer, junk}) std::filesystem::remove(p);
}

TEST_CASE("exit codes") {
  CHECK(cli("run --program nope").code == 2);
  CHECK(cli("run --program fib --n abc").code == 2);
  CHECK(cli("run --program fib --backend gpu").code == 2);
  CHECK(cli("run --program bfs --input /nonexistent.graph").code == 2);
  CHECK(cli("run --program fib --n 10 --capacity 1").code == 3);
  CHECK(cli("run --program spin --epoch-limit 200").code == 3);
  CHECK(cli("run --program fib --trace-slots --backend par").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("list").code == 0);
}
