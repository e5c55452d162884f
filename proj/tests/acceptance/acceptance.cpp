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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/local_oracles.hpp"
#include "support/reference_tvm.hpp"
#include "support/scripted.hpp"
#include "trees/apps.hpp"
#include "trees/error.hpp"
#include "trees/metrics.hpp"
#include "trees/program.hpp"
#include "trees/trace_io.hpp"

using namespace trees;
using namespace trees::testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure messages for one criterion.
class Criterion {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_ > 0) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  long checks_ = 0;
  long failed_ = 0;
  std::vector<std::string> failures_;
};

int g_failed = 0;

void report(int number, const std::string& title, const Criterion& c, const std::string& extra) {
  std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " ("
            << c.summary() << (extra.empty() ? "" : "; " + extra) << ")" << std::endl;
  if (!c.ok()) ++g_failed;
}

template <class T>
std::string show(const std::vector<T>& v) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << "]";
  return s.str();
}

// ---- shipped program corpus --------------------------------------------

struct Case {
  std::string label;
  Program program;
  std::function<bool(const ProgramResult&)> correct;
};

std::vector<Case> oracle_corpus() {
  std::vector<Case> cases;
  for (int n = 0; n <= 25; ++n) {
    cases.push_back({"fib(" + std::to_string(n) + ")", apps::fib_program(n),
                     [n](const ProgramResult& r) {
                       return r.output.words == std::vector<Word>{local_fib(n)};
                     }});
  }
  std::mt19937_64 rng(0x7e5);
  for (int i = 0; i < 50; ++i) {
    const Word v = std::uniform_int_distribution<Word>(1, 1000)(rng);
    const Word e = std::uniform_int_distribution<Word>(0, 8000)(rng);
    const Word src = std::uniform_int_distribution<Word>(0, v - 1)(rng);
    const auto g = apps::random_graph(v, e, rng(), 100);
    const auto bfs = local_bfs(g, src);
    const auto sp = local_dijkstra(g, src);
    const std::string tag = "(V=" + std::to_string(v) + ",E=" + std::to_string(e) + ")";
    cases.push_back({"bfs" + tag, apps::bfs_program(g, src),
                     [bfs](const ProgramResult& r) { return r.output.words == bfs; }});
    cases.push_back({"sssp" + tag, apps::sssp_program(g, src),
                     [sp](const ProgramResult& r) { return r.output.words == sp; }});
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t n =
        i == 0 ? 0 : (i == 1 ? (1u << 16) : std::uniform_int_distribution<std::size_t>(1, 1u << 16)(rng));
    std::vector<Word> a(n);
    const Word spread = i % 3 == 0 ? 10 : 1'000'000'000;
    for (auto& x : a) x = std::uniform_int_distribution<Word>(-spread, spread)(rng);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    for (auto variant : {apps::MergeVariant::naive, apps::MergeVariant::map}) {
      cases.push_back({std::string(variant == apps::MergeVariant::map ? "mergesort-map" : "mergesort") +
                           "(n=" + std::to_string(n) + ")",
                       apps::mergesort_program(a, variant),
                       [sorted](const ProgramResult& r) { return r.output.words == sorted; }});
    }
  }
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 22; ++i) {
    const std::size_t n = std::size_t{1} << (i % 11);
    std::vector<std::complex<double>> x(n);
    for (auto& z : x) z = {u(rng), u(rng)};
    const auto want = local_dft(x);
    cases.push_back({"fft(n=" + std::to_string(n) + ")", apps::fft_program(x),
                     [want](const ProgramResult& r) {
                       return max_abs_diff(apps::unpack_complex(r.output.reals), want) < 1e-9;
                     }});
  }
  return cases;
}

std::vector<Case> traversal_corpus() {
  std::vector<Case> cases;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 20; ++i) {
    const auto tree = i == 0 ? apps::example_tree() : random_tree(rng, 1 + i * 7);
    for (auto order : {apps::TraversalOrder::pre, apps::TraversalOrder::post}) {
      const bool post = order == apps::TraversalOrder::post;
      cases.push_back({std::string(post ? "postorder" : "preorder"),
                       apps::traversal_program(tree, order), [tree, post](const ProgramResult& r) {
                         const auto& seq = r.output.words;
                         for (std::size_t v = 0; v < tree.size(); ++v) {
                           for (Word c : {tree.left[v], tree.right[v]}) {
                             if (c == kNull) continue;
                             if (post ? !(seq[v] > seq[c]) : !(seq[v] < seq[c])) return false;
                           }
                         }
                         return true;
                       }});
    }
  }
  return cases;
}

RunConfig parallel(unsigned workers, std::int64_t group) {
  RunConfig cfg;
  cfg.backend.kind = BackendKind::bulk_parallel;
  cfg.backend.workers = workers;
  cfg.backend.group_size = group;
  return cfg;
}

// Properties every shipped run must satisfy (criteria 5, 6 and 7).
void run_invariants(const std::string& label, const ProgramResult& r, bool batched,
                    Criterion& c5, Criterion& c6, Criterion& c7) {
  c5.expect(r.metrics.lock_ops == 0, label + ": lock_ops");
  for (const auto& e : r.counters) {
    c5.expect(e.lock_ops == 0, label + ": epoch lock_ops");
    if (batched) {
      c5.expect(e.next_free_core_atomics <= e.groups_with_forks,
                label + ": atomics " + std::to_string(e.next_free_core_atomics) + " > groups " +
                    std::to_string(e.groups_with_forks));
    }
  }
  const double t1 = static_cast<double>(r.metrics.work_tasks);
  const double tinf = static_cast<double>(r.metrics.critical_path());
  const auto lower = static_cast<std::int64_t>(std::ceil(t1 / tinf));
  const auto sb = space_bounds(r.metrics);
  c6.expect(sb.lower == lower && sb.upper == r.metrics.work_tasks, label + ": space_bounds value");
  c6.expect(lower <= r.metrics.peak_next_free_core && r.metrics.peak_next_free_core <= sb.upper,
            label + ": peak " + std::to_string(r.metrics.peak_next_free_core) + " outside [" +
                std::to_string(lower) + "," + std::to_string(sb.upper) + "]");
  c7.expect(r.halted && r.final_join_depth == 0 && r.final_ndrange_depth == 0,
            label + ": halted with empty paired stacks");
}

int shell_status(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  Criterion c5, c6, c7;
  const Program example = apps::traversal_program(apps::example_tree(), apps::TraversalOrder::post);

  // 1. Golden trace of the worked example.
  {
    Criterion c;
    const auto t0 = Clock::now();
    const auto r = run_program(example);
    const double dt = seconds_since(t0);
    std::vector<std::int64_t> cens, launched;
    for (const auto& e : r.trace) {
      cens.push_back(e.cen);
      launched.push_back(e.launched);
    }
    c.expect(r.trace.size() == 7, "7 epochs, got " + std::to_string(r.trace.size()));
    c.expect(cens == std::vector<std::int64_t>{0, 1, 2, 3, 2, 1, 0}, "cen sequence " + show(cens));
    c.expect(launched == std::vector<std::int64_t>{1, 2, 4, 6, 4, 2, 1}, "launched " + show(launched));
    if (r.trace.size() == 7) {
      c.expect(r.trace[4].cen == 2 && r.trace[4].launched == 4 && r.trace[4].valid_executed == 3,
               "revisit epoch validExecuted 3 of 4");
      c.expect(r.trace[4].next_free_core == 7, "nextFreeCore 7 at the revisit");
    }
    c.expect(r.metrics.peak_next_free_core == 13, "peak nextFreeCore 13");
    c.expect(r.halted && r.final_join_depth == 0 && r.final_ndrange_depth == 0,
             "stacks empty at halt");
    std::istringstream actual(trace_jsonl(r.trace, r.metrics));
    std::ifstream golden(TREES_TEST_DATA_DIR "/example_postorder.golden.jsonl");
    c.expect(golden.good() && compare_traces(actual, golden).identical, "golden file match");
    c.expect(dt < 1.0, "runtime " + std::to_string(dt) + " s");
    report(1, "golden trace of the example postorder run", c, "runtime " + std::to_string(dt) + " s");
  }

  // 2. Reference-interpreter equivalence.
  {
    Criterion c;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(4242);
    std::vector<Script> scripts;
    for (int i = 0; i < 40; ++i) scripts.push_back(postorder_script(random_tree(rng, 1 + i)));
    for (int n = 0; n <= 12; ++n) scripts.push_back(fib_script(n));
    for (int i = 0; i < 60; ++i) scripts.push_back(random_script(rng, 2 + i % 6));
    for (std::size_t i = 0; i < scripts.size(); ++i) {
      const auto ref = run_reference(scripts[i]);
      for (bool par : {false, true}) {
        auto log = std::make_shared<ScriptLog>(scripts[i].nodes.size());
        RunConfig cfg = par ? parallel(4, 8) : RunConfig{};
        cfg.observer = [log](const EpochTrace&, const EpochCounters&) {
          log->epoch_ends.push_back(log->count.load());
        };
        const auto r = run_program(script_program(scripts[i], log), cfg);
        auto got = epochs_from_log(*log);
        for (std::size_t e = 0; e < got.size() && e < r.trace.size(); ++e) got[e].cen = r.trace[e].cen;
        c.expect(got == ref, "program " + std::to_string(i) + (par ? " (parallel)" : ""));
      }
    }
    const double dt = seconds_since(t0);
    c.expect(scripts.size() >= 100, "at least 100 programs");
    c.expect(dt < 30.0, "runtime " + std::to_string(dt) + " s");
    report(2, "engine matches the bit-vector reference interpreter on " +
                  std::to_string(scripts.size()) + " programs",
           c, "runtime " + std::to_string(dt) + " s");
  }

  // 3. Oracle correctness, 4. backend equivalence.
  const auto corpus = oracle_corpus();
  {
    Criterion c3, c4;
    std::vector<ProgramResult> seq_results;
    const auto t0 = Clock::now();
    for (const auto& k : corpus) {
      seq_results.push_back(run_program(k.program));
      c3.expect(k.correct(seq_results.back()), k.label);
    }
    const double dt = seconds_since(t0);
    c3.expect(dt < 120.0, "runtime " + std::to_string(dt) + " s");
    report(3, "fib, bfs, sssp, mergesort (both variants) and fft match oracles over " +
                  std::to_string(corpus.size()) + " runs",
           c3, "runtime " + std::to_string(dt) + " s");

    const std::vector<std::pair<unsigned, std::int64_t>> backends{{1, 256}, {2, 64}, {4, 256}, {8, 16}};
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& base = seq_results[i];
      run_invariants(corpus[i].label, base, false, c5, c6, c7);
      const auto base_trace = trace_jsonl(base.trace, base.metrics);
      for (const auto& [workers, group] : backends) {
        const auto r = run_program(corpus[i].program, parallel(workers, group));
        const std::string tag = corpus[i].label + " workers=" + std::to_string(workers);
        c4.expect(r.output == base.output, tag + ": result");
        c4.expect(r.metrics.work_tasks == base.metrics.work_tasks, tag + ": work_tasks");
        c4.expect(r.metrics.critical_path() == base.metrics.critical_path(), tag + ": critical path");
        c4.expect(trace_jsonl(r.trace, r.metrics) == base_trace, tag + ": trace file");
        run_invariants(tag, r, true, c5, c6, c7);
      }
    }
    report(4, "sequential and bulk-parallel backends (workers 1, 2, 4, 8) agree", c4, "");
  }

  for (const auto& k : traversal_corpus()) {
    const auto r = run_program(k.program);
    c7.expect(k.correct(r), k.label + ": visit order");
    run_invariants(k.label, r, false, c5, c6, c7);
    run_invariants(k.label + " parallel", run_program(k.program, parallel(3, 4)), true, c5, c6, c7);
  }

  // 5. Forked tasks never run in their forking epoch.
  {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
      const auto s = random_script(rng, 3 + i % 5);
      std::vector<int> parent(s.nodes.size(), -1);
      for (std::size_t v = 0; v < s.nodes.size(); ++v) {
        for (int ch : s.nodes[v].forks) parent[ch] = static_cast<int>(v);
      }
      for (bool par : {false, true}) {
        auto log = std::make_shared<ScriptLog>(s.nodes.size());
        RunConfig cfg = par ? parallel(4, 2) : RunConfig{};
        cfg.observer = [log](const EpochTrace&, const EpochCounters&) {
          log->epoch_ends.push_back(log->count.load());
        };
        const auto r = run_program(script_program(s, log), cfg);
        std::vector<std::size_t> epoch_of(s.nodes.size());
        std::size_t begin = 0;
        for (std::size_t e = 0; e < log->epoch_ends.size(); ++e) {
          for (std::size_t k = begin; k < log->epoch_ends[e]; ++k) epoch_of[log->ids[k]] = e;
          begin = log->epoch_ends[e];
        }
        for (std::size_t v = 0; v < s.nodes.size(); ++v) {
          if (parent[v] >= 0) {
            c5.expect(epoch_of[v] > epoch_of[parent[v]],
                      "node " + std::to_string(v) + " ran in its forking epoch");
          }
        }
        run_invariants("script", r, par, c5, c6, c7);
      }
    }
    // 256 forks inside one work-group take a single atomic add.
    ProgramBuilder b;
    auto& reg = b.registry();
    const auto leaf = reg.add_task("leaf", [](TaskContext&) {});
    const auto child = reg.add_task("child", [leaf](TaskContext& ctx) { ctx.fork(leaf, {}); });
    const auto root = reg.add_task("root", [child](TaskContext& ctx) {
      for (int i = 0; i < 256; ++i) ctx.fork(child, {});
    });
    b.root(root);
    const auto r = run_program(std::move(b).build(), parallel(2, 256));
    c5.expect(r.counters.size() >= 2 && r.counters[1].next_free_core_atomics == 1 &&
                  r.trace[1].forked == 256,
              "256 forks in one group use one atomic add");
    report(5, "lock-free, batched allocation, forks deferred to later epochs", c5, "");
  }

  // 6. Performance model closed forms and space bounds.
  {
    struct Row {
      PerfModelParams p;
      ModelCase which;
      double expected;  // NaN when only the closed form is checked
    };
    const double nan = std::nan("");
    const std::vector<Row> table{
        {{100, 10, 1, 1, 1, 1, 0}, ModelCase::scalar, 110},
        {{1024, 8, 4, 16, 1, 2, 0}, ModelCase::best, 32},
        {{1024, 8, 4, 16, 1, 2, 0}, ModelCase::pessimistic, 80},
        {{1024, 8, 4, 16, 1, 2, 3}, ModelCase::worst, nan},
        {{5e6, 1234, 8, 64, 1.3, 4.5, 0}, ModelCase::scalar, nan},
        {{5e6, 1234, 8, 64, 1.3, 4.5, 0}, ModelCase::best, nan},
        {{5e6, 1234, 8, 64, 1.3, 4.5, 0}, ModelCase::pessimistic, nan},
        {{5e6, 1234, 8, 64, 1.3, 4.5, 5}, ModelCase::worst, nan},
        {{19, 7, 1, 1, 1, 1, 0}, ModelCase::scalar, 26},
        {{19, 7, 2, 32, 2.5, 0.5, 0}, ModelCase::pessimistic, nan},
        {{3.5e9, 1e5, 4, 48, 1.1, 17, 2}, ModelCase::worst, nan},
        {{777, 0, 3, 5, 1, 0, 0}, ModelCase::best, nan},
        {{1e12, 1e3, 1024, 4096, 1.01, 100, 11}, ModelCase::worst, nan},
    };
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& q = table[i].p;
      long double f = 1.0L;
      long double width = q.w;
      switch (table[i].which) {
        case ModelCase::scalar: width = 1.0L; break;
        case ModelCase::best: break;
        case ModelCase::pessimistic: f = std::log(static_cast<long double>(q.w)) / std::log(2.0L); break;
        case ModelCase::worst: f = std::pow(2.0L, q.depth); break;
      }
      const long double closed = static_cast<long double>(q.v1) * f * q.t1 /
                                     (static_cast<long double>(q.p) * width) +
                                 static_cast<long double>(q.vinf) * q.tinf;
      const double got = model_time(q, table[i].which);
      const double rel = std::abs(static_cast<double>((got - closed) / closed));
      c6.expect(rel <= 1e-12, "row " + std::to_string(i) + " relative error " + std::to_string(rel));
      if (!std::isnan(table[i].expected)) {
        c6.expect(got == table[i].expected, "row " + std::to_string(i) + " worked example");
      }
    }
    bool rejected = false;
    try {
      (void)model_time({1024, 8, 4, 16, 1, 2, 4}, ModelCase::worst);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::config;
    }
    c6.expect(rejected, "worst case with 2^D >= W rejected");
    report(6, "model_time closed forms on " + std::to_string(table.size()) +
                  " parameter sets; space bounds bracket peak nextFreeCore on every run",
           c6, "");
  }

  // 7. Capacity, halting and the epoch limit.
  {
    bool capacity_error = false;
    try {
      RunConfig cfg;
      cfg.capacity = 1;
      (void)run_program(apps::fib_program(5), cfg);
    } catch (const Error& e) {
      capacity_error = e.code() == ErrorCode::capacity &&
                       std::string(e.what()).find("slot 0") != std::string::npos;
    }
    c7.expect(capacity_error, "capacity-1 fork raises a capacity error naming slot 0");
    const std::string cli = TREES_CLI_PATH;
    c7.expect(shell_status(cli + " run --program fib --n 5 --capacity 1") == 3,
              "CLI exit 3 on capacity exhaustion");
    c7.expect(shell_status(cli + " run --program spin") == 3,
              "infinite forker exits 3 at the default epoch limit");
    c7.expect(shell_status(cli + " run --program spin --epoch-limit 500") == 3,
              "infinite forker exits 3 at a low epoch limit");
    report(7, "capacity errors, halting with empty stacks, epoch limit exit code", c7, "");
  }

  // 8. Utilization of the example run.
  {
    Criterion c;
    const auto r = run_program(example);
    c.expect(r.metrics.work_tasks == 19, "work_tasks " + std::to_string(r.metrics.work_tasks));
    c.expect(r.metrics.launched_total == 20, "launched_total " + std::to_string(r.metrics.launched_total));
    c.expect(r.metrics.utilization() == 0.95, "utilization " + std::to_string(r.metrics.utilization()));
    report(8, "example run work 19, launched 20, utilization 0.95", c, "");
  }

  std::cout << (g_failed == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failed) + " CRITERIA FAILED")
            << std::endl;
  return g_failed == 0 ? 0 : 1;
}
