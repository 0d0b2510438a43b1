#include "synq/thread_pool.hpp"

#include <algorithm>
#include <atomic>

namespace synq {

thread_pool::thread_pool(unsigned threads) {
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    for (unsigned i = 1; i < n; ++i)
        workers_.emplace_back([this] { worker_loop(); });
}

thread_pool::~thread_pool() {
    {
        std::lock_guard<std::mutex> lock(mu_);
        stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& w : workers_) w.join();
}

void thread_pool::worker_loop() {
    uint64_t seen = 0;
    for (;;) {
        const chunk_fn* fn;
        {
            std::unique_lock<std::mutex> lock(mu_);
            cv_start_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            // generation already drained before this worker woke
            if (fn_ == nullptr || cursor_ >= end_) continue;
            fn = fn_;
            ++active_;
        }
        work(*fn);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (--active_ == 0) cv_done_.notify_all();
        }
    }
}

void thread_pool::work(const chunk_fn& fn) {
    for (;;) {
        uint64_t b, e;
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (cursor_ >= end_) return;
            b = cursor_;
            e = std::min(end_, b + chunk_);
            cursor_ = e;
        }
        fn(b, e);
    }
}

void thread_pool::parallel_for(uint64_t begin, uint64_t end, uint64_t chunk, const chunk_fn& fn) {
    if (begin >= end) return;
    chunk = std::max<uint64_t>(1, chunk);
    if (workers_.empty() || end - begin <= chunk) {
        // single chunk or no helpers: run inline
        for (uint64_t b = begin; b < end; b += chunk)
            fn(b, std::min(end, b + chunk));
        return;
    }
    {
        std::lock_guard<std::mutex> lock(mu_);
        fn_ = &fn;
        cursor_ = begin;
        end_ = end;
        chunk_ = chunk;
        ++generation_;
    }
    cv_start_.notify_all();
    work(fn);
    std::unique_lock<std::mutex> lock(mu_);
    cv_done_.wait(lock, [&] { return active_ == 0 && cursor_ >= end_; });
    fn_ = nullptr;
}

} // namespace synq
