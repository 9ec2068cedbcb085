#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace beamaudit
{
/*!
 * Run fn(begin, end) over fixed-size chunks of [0, n) on up to `workers`
 * threads and return the per-chunk results in chunk order.
 *
 * Chunk boundaries depend only on n and chunk_size, so any reduction done
 * over the returned vector is independent of the worker count.
 */
template<class Fn>
auto parallel_chunks(std::size_t n, std::size_t chunk_size, unsigned workers,
                     Fn&& fn)
{
    using Result = decltype(fn(std::size_t{}, std::size_t{}));
    std::size_t const num_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Result> results(num_chunks);

    auto run_chunk = [&](std::size_t c) {
        std::size_t const begin = c * chunk_size;
        results[c] = fn(begin, std::min(n, begin + chunk_size));
    };

    unsigned const nthreads = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1u, workers), num_chunks));
    if (nthreads <= 1)
    {
        for (std::size_t c = 0; c < num_chunks; ++c)
        {
            run_chunk(c);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < num_chunks; c = next++)
            {
                try
                {
                    run_chunk(c);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                    {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
    return results;
}
}  // namespace beamaudit
