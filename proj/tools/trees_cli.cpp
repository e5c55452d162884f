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

// Command-line driver. Uses only the C interface of libtrees.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <unistd.h>

#include "trees/trees.h"

namespace {

// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitMismatch = 4;

int exit_code_for(trees_status s) {
  switch (s) {
    case TREES_OK:
      return kExitOk;
    case TREES_ERR_CONFIG:
    case TREES_ERR_PARSE:
    case TREES_ERR_IO:
    case TREES_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

int report(trees_status s) {
  std::cerr << "error (" << trees_status_name(s) << "): " << trees_last_error_message() << "\n";
  return exit_code_for(s);
}

struct RunArgs {
  std::string program;
  std::map<std::string, std::string> options;
  std::string backend = "seq";
  std::optional<std::string> trace;
  std::optional<std::string> golden;
  bool check = false;
  bool quiet = false;
};

class RunHandle {
 public:
  ~RunHandle() { trees_run_destroy(run_); }
  trees_run** out() { return &run_; }
  trees_run* get() const { return run_; }

 private:
  trees_run* run_ = nullptr;
};

int cmd_run(const RunArgs& a) {
  RunHandle run;
  if (auto s = trees_run_create(a.program.c_str(), run.out()); s != TREES_OK) {
    return report(s);
  }
  if (auto s = trees_run_set_option(run.get(), "backend", a.backend.c_str()); s != TREES_OK) {
    return report(s);
  }
  for (const auto& [key, value] : a.options) {
    if (auto s = trees_run_set_option(run.get(), key.c_str(), value.c_str()); s != TREES_OK) {
      return report(s);
    }
  }
  if (auto s = trees_run_execute(run.get()); s != TREES_OK) {
    return report(s);
  }

  const char* text = nullptr;
  const char* json = nullptr;
  const char* table = nullptr;
  trees_run_result_text(run.get(), &text);
  if (!a.quiet) {
    std::cout << "result: " << text << "\n";
  }
  trees_run_metrics_json(run.get(), 1, &json);
  std::cout << "metrics: " << json << "\n";
  trees_run_metrics_table(run.get(), &table);
  std::cout << table;

  std::string trace_path;
  std::optional<std::filesystem::path> scratch;
  if (a.trace) {
    trace_path = *a.trace;
  } else if (a.golden) {
    scratch = std::filesystem::temp_directory_path() /
              ("trees-trace-" + std::to_string(::getpid()) + ".jsonl");
    trace_path = scratch->string();
  }
  if (!trace_path.empty()) {
    if (auto s = trees_run_write_trace(run.get(), trace_path.c_str()); s != TREES_OK) {
      return report(s);
    }
  }

  int code = kExitOk;
  if (a.golden) {
    int identical = 0;
    char* diff = nullptr;
    const auto s = trees_compare_trace_files(trace_path.c_str(), a.golden->c_str(), &identical,
                                             &diff);
    if (scratch) {
      std::error_code ignored;
      std::filesystem::remove(*scratch, ignored);
    }
    if (s != TREES_OK) {
      return report(s);
    }
    std::cout << "golden: " << (identical ? "match" : "MISMATCH") << "\n";
    if (!identical) {
      std::cout << diff << "\n";
      code = kExitMismatch;
    }
    trees_string_free(diff);
  }
  if (a.check) {
    int ok = 0;
    const char* detail = nullptr;
    if (auto s = trees_run_check(run.get(), &ok, &detail); s != TREES_OK) {
      return report(s);
    }
    std::cout << "check: " << (ok ? "ok" : "FAILED") << " (" << detail << ")\n";
    if (!ok) {
      code = kExitMismatch;
    }
  }
  return code;
}

int cmd_compare(const std::string& actual, const std::string& golden) {
  int identical = 0;
  char* diff = nullptr;
  const auto s = trees_compare_trace_files(actual.c_str(), golden.c_str(), &identical, &diff);
  if (s != TREES_OK) {
    std::cerr << "error (" << trees_status_name(s) << "): " << trees_last_error_message() << "\n";
    return 2;
  }
  std::cout << diff << "\n";
  trees_string_free(diff);
  return identical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TREES task-parallel runtime driver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", trees_version());

  RunArgs ra;
  auto* run = app.add_subcommand("run", "run a shipped program");
  run->add_option("--program,-p", ra.program, "fib, preorder, postorder, bfs, sssp, mergesort, "
                                              "mergesort-map, fft or spin")
      ->required();
  run->add_option("--backend", ra.backend, "seq or par")->check(CLI::IsMember({"seq", "par"}));
  run->add_option("--trace", ra.trace, "write the JSON Lines epoch trace here");
  run->add_option("--golden", ra.golden, "compare the trace with this file (exit 4 on mismatch)");
  run->add_flag("--check", ra.check, "compare the result with the oracle (exit 4 on mismatch)");
  run->add_flag("--quiet,-q", ra.quiet, "do not print the result");
  bool trace_slots = false;
  run->add_flag("--trace-slots", trace_slots, "add per-slot state to each trace line (seq only)");
  // Passed through to the library unchanged.
  const std::map<std::string, std::string> passthrough{
      {"--input", "input"},   {"--n", "n"},           {"--src", "src"},
      {"--size", "size"},     {"--edges", "edges"},   {"--seed", "seed"},
      {"--max-weight", "max_weight"}, {"--workers", "workers"},
      {"--group-size", "group_size"}, {"--capacity", "capacity"},
      {"--epoch-limit", "epoch_limit"}};
  std::map<std::string, std::string> raw;
  for (const auto& [flag, key] : passthrough) {
    run->add_option(flag, raw[key], "");
  }

  std::string actual;
  std::string golden;
  auto* cmp = app.add_subcommand("compare-trace", "compare two trace files");
  cmp->add_option("actual", actual)->required();
  cmp->add_option("golden", golden)->required();

  auto* list = app.add_subcommand("list", "list shipped programs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*run) {
    for (const auto& [flag, key] : passthrough) {
      if (run->count(flag) > 0) {
        ra.options[key] = raw[key];
      }
    }
    if (trace_slots) {
      ra.options["trace_slots"] = "1";
    }
    return cmd_run(ra);
  }
  if (*cmp) {
    return cmd_compare(actual, golden);
  }
  if (*list) {
    for (const char* name : {"fib", "preorder", "postorder", "bfs", "sssp", "mergesort",
                             "mergesort-map", "fft", "spin"}) {
      std::cout << name << "\n";
    }
  }
  return kExitOk;
}
