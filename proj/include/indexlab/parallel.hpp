#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace indexlab {

/// Worker count resolution: explicit request > INDEXLAB_THREADS > hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("INDEXLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Static partition of [0, count) into contiguous chunks, one per worker.
/// fn(chunk_index, begin, end) must only touch chunk-owned state so results
/// are schedule independent.
inline void parallel_chunks(std::size_t count, unsigned threads,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    unsigned workers = resolve_threads(threads);
    if (count == 0) return;
    if (workers <= 1 || count < 2 * workers) {
        fn(0, 0, count);
        return;
    }
    std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::size_t idx = 0;
    for (std::size_t begin = 0; begin < count; begin += chunk, ++idx) {
        std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back(fn, idx, begin, end);
    }
    for (auto& t : pool) t.join();
}

}  // namespace indexlab
