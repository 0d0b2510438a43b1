#pragma once

#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "synq/adjacency.hpp"
#include "synq/network_desc.hpp"
#include "synq/random.hpp"
#include "synq/soa.hpp"
#include "synq/spike_ring.hpp"
#include "synq/thread_pool.hpp"

namespace synq {

namespace detail {

template <class M, class = void>
struct synapse_fields_of {
    using type = fields<>;
    static constexpr bool present = false;
};
template <class M>
struct synapse_fields_of<M, std::void_t<typename M::synapse_fields>> {
    using type = typename M::synapse_fields;
    static constexpr bool present = true;
};

template <class M>
constexpr bool model_uses_rng() {
    if constexpr (requires { M::uses_rng; })
        return M::uses_rng;
    else
        return false;
}

} // namespace detail

struct engine_options {
    uint64_t seed = 1;
    unsigned threads = 0;         // worker count; 0 = hardware concurrency
    bool deterministic = false;   // stages iterate sequentially in ascending id order
    uint32_t history_frames = 0;  // spike-history depth for plasticity; 0 = max(delay+1, 50)
    uint32_t pitch_align = 32;    // adjacency row pitch alignment, in elements
    bool debug_checks = false;    // per-step structural cross-checks
};

struct engine_counters {
    uint64_t steps = 0;
    uint64_t spikes = 0;
    uint64_t deliveries = 0;
    uint64_t synapse_updates = 0;  // synapse-step callback invocations
    uint64_t expiry_batches = 0;   // neurons that hit the history horizon
    uint64_t frames_consumed = 0;
};

struct phase_seconds {
    double construct = 0.0;
    double init_neurons = 0.0;
    double init_synapses = 0.0;
    double simulate = 0.0;
};

struct engine_memory {
    uint64_t neuron_fields = 0;
    uint64_t neuron_rng = 0;
    uint64_t spike_queues = 0;
    uint64_t spike_bitmasks = 0;
    uint64_t ages = 0;
    uint64_t expirations = 0;
    uint64_t adjacency = 0;
    uint64_t synapse_fields = 0;
    uint64_t total() const {
        return neuron_fields + neuron_rng + spike_queues + spike_bitmasks + ages + expirations +
               adjacency + synapse_fields;
    }
};

inline constexpr uint32_t lazy_history_default = 50;

// Clock-driven simulation loop. One step() runs the pipeline stages in
// order, with a full barrier between them:
//
//   Update Neurons -> [Update Synapses] -> Receive Spikes
//
// Update Neurons advances every neuron one step and appends spikers to the
// current frame's queue. Receive Spikes consumes the frame that is `delay`
// steps old and delivers each spike to the spiker's adjacency row, so a
// spike enqueued while producing state t+1 triggers receive callbacks
// during the step that produces state t+delay.
//
// Models with synapse state run lazily: a neuron's out-going synapses are
// only brought up to date when one of its spike frames reaches delivery or
// when its age is about to outrun the retained spike history; catch-up
// replays the per-step synapse callback against the recorded bitmasks, so
// the result is bit-identical to updating every synapse every step. All
// out-going synapses of a neuron transmit together, so one age per neuron
// suffices.
template <class Model>
class network {
public:
    using model_type = Model;
    using neuron_fields = typename Model::neuron_fields;
    using synapse_fields = typename detail::synapse_fields_of<Model>::type;
    static constexpr bool has_synapses = detail::synapse_fields_of<Model>::present;
    static constexpr bool uses_rng = detail::model_uses_rng<Model>();

    using neuron_store = soa_store<neuron_fields>;
    using synapse_store = soa_store<synapse_fields>;
    using tap_fn = std::function<void(int64_t, std::span<const uint32_t>)>;

    network(network_desc desc, Model model, engine_options opt = {})
        : desc_(std::move(desc)), model_(std::move(model)), opt_(opt) {
        validate_or_throw(desc_);
        n_ = desc_.neuron_count();
        dt_ = static_cast<float>(desc_.dt);
        delay_ = desc_.delay;

        if (!opt_.deterministic && opt_.threads != 1) {
            pool_ = std::make_unique<thread_pool>(opt_.threads);
            if (pool_->size() == 1) pool_.reset();
        }

        auto t0 = clock_now();
        adj_ = build_adjacency(desc_, opt_.seed, opt_.pitch_align, pool_.get());
        timings_.construct = since(t0);

        if constexpr (has_synapses) {
            uint32_t floor = delay_ + 1;
            history_ = opt_.history_frames ? std::max(opt_.history_frames, floor)
                                           : std::max(floor, lazy_history_default);
        }
        uint32_t bit_frames = has_synapses ? history_ : (opt_.debug_checks ? delay_ : 0);
        ring_ = spike_ring(n_, delay_, bit_frames);

        neurons_.resize(n_);
        if constexpr (uses_rng) rng_.resize(n_);
        if constexpr (has_synapses) {
            synapses_.resize(static_cast<uint64_t>(n_) * adj_.deg_max());
            ages_.assign(n_, 0);
            expiring_.resize(n_);
        }
        init();
    }

    // (re)run the Init stage: model init callbacks, ages, cleared history
    void init() {
        t_ = 0;
        last_consumed_ = -1;
        counters_ = {};
        ring_.reset();
        expiring_count_ = 0;

        if constexpr (uses_rng)
            for (uint32_t i = 0; i < n_; ++i)
                rng_[i].reseed(derive_seed(opt_.seed, (1ull << 32) + i));

        auto t0 = clock_now();
        run_partitioned(n_, [&](uint64_t b, uint64_t e) {
            for (uint32_t i = static_cast<uint32_t>(b); i < e; ++i)
                model_.init(ref<false>(i));
        });
        timings_.init_neurons = since(t0);

        if constexpr (has_synapses) {
            t0 = clock_now();
            std::fill(ages_.begin(), ages_.end(), 0u);
            run_partitioned(n_, [&](uint64_t b, uint64_t e) {
                for (uint32_t i = static_cast<uint32_t>(b); i < e; ++i) {
                    auto row = adj_.row(i);
                    uint64_t base = static_cast<uint64_t>(i) * adj_.deg_max();
                    for (size_t k = 0; k < row.size(); ++k)
                        model_.init_synapse(
                            synapse_ref<synapse_store>(&synapses_, base + k, i, row[k]));
                }
            });
            timings_.init_synapses = since(t0);
        }
    }

    void step() {
        auto t0 = clock_now();
        ring_.begin_step(t_);
        expiring_count_ = 0;

        if (sequential())
            stage_update<false>();
        else
            stage_update<true>();

        auto frame = ring_.frame(t_);
        counters_.spikes += frame.size();
        if (tap_) tap_(t_, frame);
        if (opt_.debug_checks) check_frame(frame);

        if constexpr (has_synapses) {
            if (sequential())
                stage_synapses<false>();
            else
                stage_synapses<true>();
        }

        if (sequential())
            stage_receive<false>();
        else
            stage_receive<true>();

        ++t_;
        ++counters_.steps;
        timings_.simulate += since(t0);
    }

    void run(int64_t steps) {
        for (int64_t i = 0; i < steps; ++i) step();
    }

    // bring every synapse current so observable state matches step-by-step
    // (eager) execution
    void flush() {
        if constexpr (has_synapses) {
            auto t0 = clock_now();
            run_partitioned(n_, [&](uint64_t b, uint64_t e) {
                for (uint32_t i = static_cast<uint32_t>(b); i < e; ++i) catch_up(i, t_ - 1);
            });
            timings_.simulate += since(t0);
        }
    }

    int64_t now() const { return t_; }
    float dt() const { return dt_; }
    uint32_t delay() const { return delay_; }
    uint32_t history_frames() const { return history_; }
    uint32_t neuron_count() const { return n_; }
    uint64_t edge_count() const { return adj_.edge_count(); }
    uint64_t synapse_capacity() const {
        return has_synapses ? static_cast<uint64_t>(n_) * adj_.deg_max() : 0;
    }
    const adjacency_list& graph() const { return adj_; }
    const network_desc& desc() const { return desc_; }
    const engine_counters& counters() const { return counters_; }
    const phase_seconds& timings() const { return timings_; }
    uint64_t seed() const { return opt_.seed; }
    bool deterministic() const { return opt_.deterministic; }
    unsigned worker_count() const { return pool_ ? pool_->size() : 1; }

    void set_spike_tap(tap_fn fn) { tap_ = std::move(fn); }

    template <size_t I>
    auto neuron_field() {
        return std::span(neurons_.template data<I>(), n_);
    }
    template <size_t I>
    auto synapse_field() {
        static_assert(has_synapses);
        return std::span(synapses_.template data<I>(), synapses_.size());
    }
    std::span<const uint32_t> ages() const { return {ages_.data(), ages_.size()}; }
    std::span<const uint32_t> expiring() const { return {expiring_.data(), expiring_count_}; }
    Model& model() { return model_; }

    engine_memory memory() const {
        engine_memory m;
        m.neuron_fields = neurons_.bytes();
        m.neuron_rng = rng_.size() * sizeof(xorshift);
        uint64_t ring_bytes = ring_.bytes();
        m.spike_bitmasks = static_cast<uint64_t>(ring_.bit_frames()) * ((n_ + 63) / 64) * 8;
        m.spike_queues = ring_bytes - m.spike_bitmasks;
        m.ages = ages_.size() * sizeof(uint32_t);
        m.expirations = expiring_.size() * sizeof(uint32_t);
        m.adjacency = adj_.bytes();
        m.synapse_fields = synapses_.bytes();
        return m;
    }

private:
    using clock = std::chrono::steady_clock;
    static clock::time_point clock_now() { return clock::now(); }
    static double since(clock::time_point t0) {
        return std::chrono::duration<double>(clock_now() - t0).count();
    }

    bool sequential() const { return opt_.deterministic || !pool_; }

    template <bool PAR>
    neuron_ref<neuron_store, PAR> ref(uint32_t id) {
        return {&neurons_, id, rng_.data()};
    }

    // partition [0, n) into 64-aligned chunks so bitmask words are never
    // shared between workers
    void run_partitioned(uint64_t n, const std::function<void(uint64_t, uint64_t)>& fn) {
        if (!pool_ || n == 0) {
            if (n) fn(0, n);
            return;
        }
        uint64_t chunk = (n / (pool_->size() * 8) + 63) / 64 * 64;
        if (chunk == 0) chunk = 64;
        pool_->parallel_for(0, n, chunk, fn);
    }

    template <bool PAR>
    void stage_update() {
        const int64_t t = t_;
        auto body = [&](uint64_t b, uint64_t e) {
            for (uint32_t i = static_cast<uint32_t>(b); i < e; ++i) {
                bool spk = model_.update(ref<PAR>(i), dt_);
                if (spk) {
                    ring_.push(t, i, PAR);
                    if (track_bits()) ring_.set_bit(t, i);
                }
                if constexpr (has_synapses) {
                    bool transmits = (delay_ == 1) ? spk : ring_.bit(t - delay_ + 1, i);
                    if (!transmits &&
                        static_cast<int64_t>(ages_[i]) + history_ <= t + delay_ + 1) {
                        uint32_t idx;
                        if constexpr (PAR)
                            idx = std::atomic_ref<uint32_t>(expiring_count_)
                                      .fetch_add(1, std::memory_order_relaxed);
                        else
                            idx = expiring_count_++;
                        expiring_[idx] = i;
                    }
                }
            }
        };
        if constexpr (PAR) {
            run_partitioned(n_, body);
            // completed frames are sorted by id before any stage reads them
            uint32_t* q = ring_.queue_data(t);
            std::sort(q, q + ring_.queue_count(t));
        } else {
            body(0, n_);  // ascending iteration appends in id order already
        }
    }

    template <bool PAR>
    void stage_synapses() {
        const int64_t due = t_ - delay_ + 1;
        std::span<const uint32_t> transmitting =
            due >= 0 ? ring_.frame(due) : std::span<const uint32_t>{};
        std::span<const uint32_t> expiring{expiring_.data(), expiring_count_};
        counters_.expiry_batches += expiring.size();
        const uint64_t total = transmitting.size() + expiring.size();
        if (total == 0) return;

        auto body = [&](uint64_t b, uint64_t e) {
            for (uint64_t k = b; k < e; ++k) {
                uint32_t nid = k < transmitting.size()
                                   ? transmitting[k]
                                   : expiring[k - transmitting.size()];
                catch_up(nid, t_);
            }
        };
        if constexpr (PAR) {
            uint64_t chunk = std::max<uint64_t>(1, total / (pool_->size() * 8));
            pool_->parallel_for(0, total, chunk, body);
        } else {
            body(0, total);
        }
    }

    template <bool PAR>
    void stage_receive() {
        const int64_t due = t_ - delay_ + 1;
        if (due < 0) return;
        auto spikes = ring_.frame(due);
        if (opt_.debug_checks) {
            if (due != last_consumed_ + 1)
                throw std::logic_error("spike frame skipped or consumed twice");
            last_consumed_ = due;
        }
        ++counters_.frames_consumed;
        if (spikes.empty()) return;

        std::atomic<uint64_t> delivered{0};
        auto body = [&](uint64_t b, uint64_t e) {
            uint64_t local = 0;
            for (uint64_t s = b; s < e; ++s) {
                const uint32_t src = spikes[s];
                auto from = ref<PAR>(src);
                auto row = adj_.row(src);
                local += row.size();
                [[maybe_unused]] uint64_t base = static_cast<uint64_t>(src) * adj_.deg_max();
                for (size_t k = 0; k < row.size(); ++k) {
                    if constexpr (has_synapses)
                        model_.receive(from, ref<PAR>(row[k]),
                                       synapse_ref<synapse_store>(&synapses_, base + k, src,
                                                                  row[k]));
                    else
                        model_.receive(from, ref<PAR>(row[k]));
                }
            }
            delivered.fetch_add(local, std::memory_order_relaxed);
        };
        if constexpr (PAR) {
            uint64_t chunk = std::max<uint64_t>(1, spikes.size() / (pool_->size() * 8));
            pool_->parallel_for(0, spikes.size(), chunk, body);
        } else {
            body(0, spikes.size());
        }
        counters_.deliveries += delivered.load(std::memory_order_relaxed);
    }

    // replay synapse updates for steps [ages[n], through]; pre is the
    // spiker's bit at the frame that was arriving at each replayed step's
    // plasticity query (u - delay), post is the target's bit at u
    void catch_up(uint32_t n, int64_t through) {
        if constexpr (has_synapses) {
            const int64_t a0 = ages_[n];
            if (a0 > through) return;
            assert(a0 - static_cast<int64_t>(delay_) >= through - history_ + 1 ||
                   a0 - static_cast<int64_t>(delay_) < 0);
            auto row = adj_.row(n);
            const uint64_t base = static_cast<uint64_t>(n) * adj_.deg_max();
            for (size_t k = 0; k < row.size(); ++k) {
                synapse_state<synapse_fields> st;
                st.load(synapses_, base + k);
                st.src_ = n;
                st.dst_ = row[k];
                for (int64_t u = a0; u <= through; ++u)
                    model_.update_synapse(st, ring_.bit(u - delay_, n), ring_.bit(u, row[k]),
                                          dt_);
                st.store(synapses_, base + k);
            }
            counters_.synapse_updates +=
                row.size() * static_cast<uint64_t>(through - a0 + 1);
            ages_[n] = static_cast<uint32_t>(through + 1);
        }
    }

    bool track_bits() const { return has_synapses || opt_.debug_checks; }

    void check_frame(std::span<const uint32_t> frame) {
        for (size_t i = 1; i < frame.size(); ++i)
            if (frame[i - 1] >= frame[i])
                throw std::logic_error("spike frame not sorted/unique");
        if (track_bits() && ring_.popcount(t_) != frame.size())
            throw std::logic_error("spike queue and bitmask disagree");
    }

    network_desc desc_;
    Model model_;
    engine_options opt_;
    uint32_t n_ = 0;
    float dt_ = 1.0f;
    uint32_t delay_ = 1;
    uint32_t history_ = 0;

    std::unique_ptr<thread_pool> pool_;
    adjacency_list adj_;
    spike_ring ring_;
    neuron_store neurons_;
    synapse_store synapses_;
    std::vector<xorshift> rng_;
    std::vector<uint32_t> ages_;
    std::vector<uint32_t> expiring_;
    uint32_t expiring_count_ = 0;

    int64_t t_ = 0;
    int64_t last_consumed_ = -1;
    tap_fn tap_;
    engine_counters counters_;
    phase_seconds timings_;
};

} // namespace synq
