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

#include "worker_pool.hpp"

namespace trees::detail {

WorkerPool::WorkerPool(unsigned workers) {
  threads_.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) {
    threads_.emplace_back([this, i] { loop(i); });
  }
}

WorkerPool::~WorkerPool() {
  stop_.store(true);
  generation_.fetch_add(1);
  generation_.notify_all();
  // jthread joins on destruction
}

void WorkerPool::run(const std::function<void(unsigned)>& job) {
  if (threads_.empty()) {
    job(0);
    return;
  }
  job_ = &job;
  pending_.store(size());
  generation_.fetch_add(1);
  generation_.notify_all();
  for (unsigned left = pending_.load(); left != 0; left = pending_.load()) {
    pending_.wait(left);
  }
  job_ = nullptr;
}

void WorkerPool::loop(unsigned index) {
  std::uint64_t seen = 0;
  for (;;) {
    generation_.wait(seen);
    seen = generation_.load();
    if (stop_.load()) {
      return;
    }
    (*job_)(index);
    if (pending_.fetch_sub(1) == 1) {
      pending_.notify_one();
    }
  }
}

}  // namespace trees::detail
