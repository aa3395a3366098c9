//------------------------------------------------------------------------------
//
//   Copyright 2026 The stream-metrics Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace stream {

/// Worker count: STREAM_THREADS if set and positive, else the hardware count.
inline std::size_t thread_count()
{
  if (char const *env = std::getenv("STREAM_THREADS"))
  {
    try
    {
      long const n = std::stol(env);
      if (n > 0)
      {
        return static_cast<std::size_t>(n);
      }
    }
    catch (std::exception const &)
    {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/**
 * Runs body(i) for i in [0, count) over contiguous blocks. Each index is
 * visited exactly once, so bodies that only write slot i give output that
 * does not depend on the thread count.
 */
template <typename Body>
void parallel_for(std::size_t count, Body &&body)
{
  std::size_t const workers = std::min(thread_count(), count);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      body(i);
    }
    return;
  }

  std::exception_ptr failure;
  std::mutex         failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t const block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
  {
    std::size_t const begin = w * block;
    std::size_t const end   = std::min(count, begin + block);
    pool.emplace_back([&, begin, end] {
      try
      {
        for (std::size_t i = begin; i < end; ++i)
        {
          body(i);
        }
      }
      catch (...)
      {
        std::lock_guard lock(failure_mutex);
        if (!failure)
        {
          failure = std::current_exception();
        }
      }
    });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace stream
