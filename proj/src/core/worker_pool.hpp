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

#ifndef TREES_SRC_WORKER_POOL_HPP
#define TREES_SRC_WORKER_POOL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace trees::detail {

/// Fixed set of threads that run one job at a time, all workers together.
/// Dispatch and completion use atomic wait/notify only; there is no mutex.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  unsigned size() const noexcept { return static_cast<unsigned>(threads_.size()); }

  /// Calls job(worker_index) on every worker; returns once all have returned.
  /// `job` must not throw.
  void run(const std::function<void(unsigned)>& job);

 private:
  void loop(unsigned index);

  std::vector<std::jthread> threads_;
  std::atomic<std::uint64_t> generation_{0};
  std::atomic<unsigned> pending_{0};
  std::atomic<bool> stop_{false};
  const std::function<void(unsigned)>* job_ = nullptr;
};

}  // namespace trees::detail

#endif  // TREES_SRC_WORKER_POOL_HPP
