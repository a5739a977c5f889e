#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <vector>

namespace sicnet {

struct ExecPolicy {
    /// Worker threads; 0 means std::thread::hardware_concurrency().
    unsigned workers = 1;
};

/// Evaluates fn(i) for i in [0, count) and returns the results in index
/// order. Each worker owns one contiguous index range, so the output does
/// not depend on the worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, ExecPolicy exec, Fn&& fn)
{
    std::vector<T> out(count);
    unsigned workers = exec.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : exec.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(count, begin + chunk);
                for (std::size_t i = begin; i < end; ++i)
                    out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

/// Pairwise (cascade) summation; deterministic for a fixed input order.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace sicnet
