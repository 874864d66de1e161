#ifndef DISTCOV_PARALLEL_HPP
#define DISTCOV_PARALLEL_HPP

#include <Eigen/Core>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace distcov {

/// Process-wide default thread cap. 0 means "decide from the environment":
/// DISTCOV_THREADS if set, otherwise hardware concurrency.
int default_threads() noexcept;
void set_default_threads(int n) noexcept;

/// Resolve a per-call request (0 = use the process default) to a count >= 1.
int resolve_threads(int requested) noexcept;

namespace detail {

inline std::atomic<int>& thread_override() {
    static std::atomic<int> v{0};
    return v;
}

} // namespace detail

inline void set_default_threads(int n) noexcept {
    detail::thread_override().store(n > 0 ? n : 0, std::memory_order_relaxed);
}

inline int default_threads() noexcept {
    int v = detail::thread_override().load(std::memory_order_relaxed);
    if (v > 0) return v;
    if (const char* env = std::getenv("DISTCOV_THREADS")) {
        int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

inline int resolve_threads(int requested) noexcept {
    return requested > 0 ? requested : default_threads();
}

/// Run fn(i) for i in [0, count). Each index must write only to its own
/// output slots; under that contract the result is identical for any thread
/// count, since chunking affects scheduling but not any value computed.
template <typename Fn>
void parallel_for(Eigen::Index count, Fn&& fn, int threads = 0) {
    if (count <= 0) return;
    const int nthreads =
        static_cast<int>(std::min<Eigen::Index>(resolve_threads(threads), count));
    if (nthreads <= 1) {
        for (Eigen::Index i = 0; i < count; ++i) fn(i);
        return;
    }

    const Eigen::Index chunk =
        std::max<Eigen::Index>(1, count / (8 * static_cast<Eigen::Index>(nthreads)));
    std::atomic<Eigen::Index> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const Eigen::Index begin = next.fetch_add(chunk, std::memory_order_relaxed);
            if (begin >= count) return;
            const Eigen::Index end = std::min(begin + chunk, count);
            try {
                for (Eigen::Index i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads) - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace distcov

#endif
