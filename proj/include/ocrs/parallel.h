// Copyright 2026 The Authors.
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

#ifndef OCRS_PARALLEL_H_
#define OCRS_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ocrs {

// std::thread::hardware_concurrency(), at least 1.
int DefaultWorkers();
// 0 means DefaultWorkers().
int ResolveWorkers(int workers);

// Runs body(begin, end, chunk_index) over [0, count) split into chunks of
// `chunk` items and returns the per-chunk results in chunk order. Chunk
// boundaries do not depend on `workers`, so a reduction over the result
// is identical for any worker count.
template <class T, class F>
std::vector<T> ParallelChunks(std::int64_t count, std::int64_t chunk,
                              int workers, F&& body) {
  chunk = std::max<std::int64_t>(chunk, 1);
  const std::int64_t chunks = count <= 0 ? 0 : (count + chunk - 1) / chunk;
  std::vector<T> out(static_cast<std::size_t>(chunks));
  workers = static_cast<int>(
      std::min<std::int64_t>(ResolveWorkers(workers), std::max<std::int64_t>(chunks, 1)));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      out[c] = body(c * chunk, std::min(count, (c + 1) * chunk), c);
    }
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        out[c] = body(c * chunk, std::min(count, (c + 1) * chunk), c);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(chunks);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace ocrs

#endif  // OCRS_PARALLEL_H_
