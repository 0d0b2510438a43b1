#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace synq {

// Stage-level fork/join helper. parallel_for blocks until every chunk of
// [begin, end) has been processed; workers pull chunks off a shared cursor
// (fetch-and-increment), so uneven work items balance themselves.
class thread_pool {
public:
    // threads == 0 picks the hardware concurrency
    explicit thread_pool(unsigned threads = 0);
    ~thread_pool();

    thread_pool(const thread_pool&) = delete;
    thread_pool& operator=(const thread_pool&) = delete;

    unsigned size() const { return static_cast<unsigned>(workers_.size()) + 1; }

    using chunk_fn = std::function<void(uint64_t, uint64_t)>;

    // fn(chunk_begin, chunk_end) is invoked for consecutive chunks; the
    // calling thread participates.
    void parallel_for(uint64_t begin, uint64_t end, uint64_t chunk, const chunk_fn& fn);

private:
    void worker_loop();
    void work(const chunk_fn& fn);

    std::vector<std::thread> workers_;
    std::mutex mu_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    const chunk_fn* fn_ = nullptr;
    uint64_t cursor_ = 0;
    uint64_t end_ = 0;
    uint64_t chunk_ = 1;
    uint64_t generation_ = 0;
    unsigned active_ = 0;
    bool stop_ = false;
};

} // namespace synq
