#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kloospow {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            correction_ += (sum_ - t) + x;
        } else {
            correction_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    void add(const CompensatedSum& other) {
        add(other.sum_);
        add(other.correction_);
    }

    double value() const { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

/// 0 means: KLOOSPOW_THREADS if set, else the hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for every i in [0, count) on up to `threads` workers. Work
/// is handed out by index, so any per-index output is independent of the
/// worker count; callers merge results in index order.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Chunk size for reproducible reductions.
inline constexpr std::size_t kReductionChunk = std::size_t{1} << 16;

/// Sums term(i) over [begin, end) in fixed chunks of kReductionChunk, each
/// compensated, merged sequentially in chunk order. The result is bit-for-bit
/// independent of `threads`.
template <class Term>
double deterministic_sum(std::size_t begin, std::size_t end, unsigned threads, Term&& term) {
    if (end <= begin) {
        return 0.0;
    }
    const std::size_t chunks = (end - begin + kReductionChunk - 1) / kReductionChunk;
    std::vector<CompensatedSum> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t lo = begin + c * kReductionChunk;
        const std::size_t hi = std::min(end, lo + kReductionChunk);
        CompensatedSum acc;
        for (std::size_t i = lo; i < hi; ++i) {
            acc.add(term(i));
        }
        partial[c] = acc;
    });
    CompensatedSum total;
    for (const auto& part : partial) {
        total.add(part);
    }
    return total.value();
}

} // namespace kloospow
