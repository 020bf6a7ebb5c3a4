// Copyright 2026 fakewidth authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fakewidth/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fakewidth {

std::int64_t block_count(std::int64_t total) {
  return (total + kTrialBlock - 1) / kTrialBlock;
}

void for_each_block(std::int64_t total, unsigned workers,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  const std::int64_t blocks = block_count(total);
  const auto run_block = [&](std::int64_t b) {
    const std::int64_t lo = b * kTrialBlock;
    const std::int64_t hi = std::min(total, lo + kTrialBlock);
    fn(b, lo, hi);
  };

  workers = resolve_workers(workers);
  if (workers <= 1 || blocks <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= blocks) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned count = std::min<std::int64_t>(workers, blocks);
  pool.reserve(count);
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace fakewidth
