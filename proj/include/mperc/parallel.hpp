// Copyright 2026 mperc contributors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mperc
{
//! Worker count from MPERC_THREADS (default 1, "0" means hardware concurrency)
inline unsigned thread_count()
{
    char const* env = std::getenv("MPERC_THREADS");
    if (!env || !*env)
        return 1;
    try
    {
        long const n = std::stol(env);
        if (n <= 0)
            return std::max(1u, std::thread::hardware_concurrency());
        return static_cast<unsigned>(std::min(n, 256L));
    }
    catch (std::exception const&)
    {
        return 1;
    }
}

/*!
 * Run body(i) for i in [0, n) on up to `threads` workers. Tasks write to
 * their own slot of a preallocated result array, so the outcome does not
 * depend on scheduling. The first exception thrown is rethrown.
 */
template<class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body)
{
    if (threads <= 1 || n <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true)
        {
            std::size_t const i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned const count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace mperc
