#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rt
{

// Resolves a requested worker count; 0 means one per hardware thread.
inline unsigned resolveWorkers(unsigned requested)
{
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Runs body(begin, end) over [0, count) split into chunks of `grain` items.
// Workers pull chunks from a shared counter; every index is visited exactly
// once and the call returns only after all chunks have finished. The first
// exception thrown by a worker is rethrown on the calling thread.
template <typename Body>
void parallelFor(std::size_t count, unsigned workers, std::size_t grain, Body &&body)
{
    if (count == 0) return;
    if (grain == 0) grain = 1;
    const std::size_t chunks = (count + grain - 1) / grain;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(resolveWorkers(workers), chunks));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex errorMutex;

    auto run = [&] {
        try
        {
            for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
            {
                const std::size_t begin = c * grain;
                body(begin, std::min(begin + grain, count));
            }
        }
        catch (...)
        {
            std::lock_guard lock(errorMutex);
            if (!error) error = std::current_exception();
            next.store(chunks);
        }
    };

    if (n <= 1)
    {
        run();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n - 1);
        for (unsigned i = 1; i < n; ++i) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

} // namespace rt
