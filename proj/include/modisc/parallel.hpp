#ifndef MODISC_PARALLEL_HPP
#define MODISC_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace modisc {

/// Worker count from MODISC_THREADS (default 1).
inline int thread_count() {
    const char* env = std::getenv("MODISC_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

/// Sums per-block partial results over [0, n) in fixed-size blocks. Blocks may
/// be evaluated on several threads, but the combination order is the block
/// order, so the result is bitwise identical for any thread count.
inline double blocked_sum(int n, const std::function<double(int, int)>& block_sum,
                          int block_size = 1024) {
    if (n <= 0) return 0.0;
    const int nblocks = (n + block_size - 1) / block_size;
    std::vector<double> partial(nblocks, 0.0);
    const int nthreads = std::min(thread_count(), nblocks);
    if (nthreads <= 1) {
        for (int b = 0; b < nblocks; ++b) {
            const int lo = b * block_size;
            partial[b] = block_sum(lo, std::min(lo + block_size, n));
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int tid = 0; tid < nthreads; ++tid) {
            pool.emplace_back([&, tid]() {
                for (int b = tid; b < nblocks; b += nthreads) {
                    const int lo = b * block_size;
                    partial[b] = block_sum(lo, std::min(lo + block_size, n));
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace modisc

#endif
