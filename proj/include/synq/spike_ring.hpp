#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace synq {

// Per-timestep spike queues and spike bitmasks on circular storage.
//
// A spike queue is an array plus a shared insertion counter; capacity is the
// neuron count, so overflow is impossible (a neuron spikes at most once per
// step). Queues are only ever read back at the delivery frame, so the queue
// ring holds exactly `delay` frames. Bitmasks answer "did neuron i spike at
// step u" across the whole retained history, which the lazy plasticity
// catch-up queries; their ring is deeper (delay+1 up to the lazy horizon)
// and is allocated only when a model carries synapse state (or when debug
// checks want the queue/bitmask cross-validation).
class spike_ring {
public:
    spike_ring() = default;

    spike_ring(uint32_t neurons, uint32_t queue_frames, uint32_t bit_frames)
        : neurons_(neurons),
          qframes_(queue_frames),
          bframes_(bit_frames),
          words_((neurons + 63) / 64) {
        entries_.resize(static_cast<size_t>(qframes_) * neurons_);
        counts_.assign(qframes_, 0);
        bits_.assign(static_cast<size_t>(bframes_) * words_, 0);
        frame_of_slot_.assign(qframes_, -1);
    }

    uint32_t neuron_count() const { return neurons_; }
    uint32_t queue_frames() const { return qframes_; }
    uint32_t bit_frames() const { return bframes_; }

    void reset() {
        counts_.assign(counts_.size(), 0);
        bits_.assign(bits_.size(), 0);
        frame_of_slot_.assign(frame_of_slot_.size(), -1);
    }

    // claim storage for frame t, clearing whatever it replaces
    void begin_step(int64_t t) {
        uint32_t qs = qslot(t);
        counts_[qs] = 0;
        frame_of_slot_[qs] = t;
        if (bframes_) {
            uint64_t* w = bits_.data() + static_cast<size_t>(bslot(t)) * words_;
            for (uint32_t i = 0; i < words_; ++i) w[i] = 0;
        }
    }

    uint32_t* queue_data(int64_t t) { return entries_.data() + static_cast<size_t>(qslot(t)) * neurons_; }
    uint32_t& queue_count(int64_t t) { return counts_[qslot(t)]; }

    uint32_t push(int64_t t, uint32_t id, bool concurrent) {
        uint32_t idx;
        if (concurrent)
            idx = std::atomic_ref<uint32_t>(counts_[qslot(t)])
                      .fetch_add(1, std::memory_order_relaxed);
        else
            idx = counts_[qslot(t)]++;
        queue_data(t)[idx] = id;
        return idx;
    }

    std::span<const uint32_t> frame(int64_t t) const {
        uint32_t qs = qslot(t);
        assert(frame_of_slot_[qs] == t && "queue frame rotated out before being read");
        return {entries_.data() + static_cast<size_t>(qs) * neurons_, counts_[qs]};
    }

    // bitmask writes are word-plain; callers partition work at 64-id
    // boundaries so no two workers share a word
    void set_bit(int64_t t, uint32_t id) {
        uint64_t* w = bits_.data() + static_cast<size_t>(bslot(t)) * words_;
        w[id >> 6] |= 1ull << (id & 63);
    }

    // false for steps before the simulation started
    bool bit(int64_t t, uint32_t id) const {
        if (t < 0) return false;
        const uint64_t* w = bits_.data() + static_cast<size_t>(bslot(t)) * words_;
        return (w[id >> 6] >> (id & 63)) & 1u;
    }

    uint64_t popcount(int64_t t) const {
        const uint64_t* w = bits_.data() + static_cast<size_t>(bslot(t)) * words_;
        uint64_t n = 0;
        for (uint32_t i = 0; i < words_; ++i) n += static_cast<uint64_t>(__builtin_popcountll(w[i]));
        return n;
    }

    uint64_t bytes() const {
        return entries_.size() * sizeof(uint32_t) + counts_.size() * sizeof(uint32_t) +
               bits_.size() * sizeof(uint64_t);
    }

private:
    uint32_t qslot(int64_t t) const { return static_cast<uint32_t>(t % qframes_); }
    uint32_t bslot(int64_t t) const { return static_cast<uint32_t>(t % bframes_); }

    uint32_t neurons_ = 0;
    uint32_t qframes_ = 0;
    uint32_t bframes_ = 0;
    uint32_t words_ = 0;
    std::vector<uint32_t> entries_;
    std::vector<uint32_t> counts_;
    std::vector<uint64_t> bits_;
    std::vector<int64_t> frame_of_slot_;  // which frame each queue slot holds
};

} // namespace synq
