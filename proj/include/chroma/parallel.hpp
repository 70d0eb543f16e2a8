#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace chroma {

/// Worker count: hardware concurrency, capped by CHROMA_THREADS when set.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char * env = std::getenv("CHROMA_THREADS")) {
        try {
            auto cap = std::stoul(env);
            if (cap >= 1)
                n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
        catch (const std::exception &) {
        }
    }
    return n;
}

/// Runs body(chunk, begin, end) over [0, n) split into contiguous chunks,
/// one per worker. Chunks are numbered in order so callers can merge
/// per-chunk results deterministically.
template <class Body>
void for_each_chunk(std::size_t n, std::size_t min_chunk, Body && body)
{
    auto workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    auto per = (n + workers - 1) / workers;
    for (std::size_t c = 0; c < workers; ++c) {
        auto begin = std::min(n, c * per);
        auto end = std::min(n, begin + per);
        threads.emplace_back([&body, c, begin, end] { body(c, begin, end); });
    }
    for (auto & t : threads)
        t.join();
}

inline std::size_t chunk_count(std::size_t n, std::size_t min_chunk)
{
    return std::max<std::size_t>(1, std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk))));
}

}
