#pragma once

// Test-only models and reference executors. These deliberately re-implement
// behavior in the most naive way possible so engine results can be checked
// against something independent of the pipeline code.

#include <cstdint>
#include <utility>
#include <vector>

#include "synq/adjacency.hpp"
#include "synq/engine.hpp"
#include "synq/soa.hpp"

namespace synq::testing {

// Spikes on a fixed per-neuron schedule (bit s of schedule[id] = spike at
// step s); records delivery counts and the step of the latest delivery.
struct probe_model {
    using neuron_fields = fields<uint32_t, uint32_t, uint32_t>;
    enum : size_t { STEP = 0, RECV_COUNT = 1, LAST_RECV = 2 };  // LAST_RECV holds step+1

    std::vector<uint64_t> schedule;

    template <class It>
    void init(It it) const {
        it.template get<STEP>() = 0;
        it.template get<RECV_COUNT>() = 0;
        it.template get<LAST_RECV>() = 0;
    }
    template <class It>
    bool update(It it, float) const {
        uint32_t s = it.template get<STEP>()++;
        if (s >= 64) return false;
        return (schedule[it.id()] >> s) & 1ull;
    }
    template <class From, class To>
    void receive(From, To to) const {
        to.template add<RECV_COUNT>(1u);
        // the update stage already advanced the counter, so this stores the
        // index of the state this step produces
        to.template put<LAST_RECV>(to.template get<STEP>());
    }
};

// Listing-style two-population flag network replayed naively: one bool per
// neuron, spike when set, delivery sets the target's flag.
struct flag_reference {
    const adjacency_list& adj;
    uint32_t first_pop;
    uint32_t delay;

    // returns (step, id) records, ordered by (step, id)
    std::vector<std::pair<int64_t, uint32_t>> run(int64_t steps) const {
        uint32_t n = adj.neuron_count();
        std::vector<uint8_t> flag(n, 0);
        for (uint32_t i = 0; i < first_pop && i < n; ++i) flag[i] = 1;
        std::vector<std::vector<uint32_t>> frames;
        std::vector<std::pair<int64_t, uint32_t>> raster;
        for (int64_t t = 0; t < steps; ++t) {
            std::vector<uint32_t> now;
            for (uint32_t i = 0; i < n; ++i)
                if (flag[i]) {
                    now.push_back(i);
                    flag[i] = 0;
                }
            for (uint32_t id : now) raster.push_back({t, id});
            frames.push_back(std::move(now));
            int64_t due = t - delay + 1;
            if (due >= 0)
                for (uint32_t src : frames[due])
                    for (uint32_t tgt : adj.row(src)) flag[tgt] = 1;
        }
        return raster;
    }
};

// spike history recorder usable as an engine tap
struct spike_log {
    std::vector<std::vector<uint32_t>> frames;
    void operator()(int64_t t, std::span<const uint32_t> frame) {
        (void)t;
        frames.emplace_back(frame.begin(), frame.end());
    }
    bool spiked(int64_t t, uint32_t id) const {
        if (t < 0 || t >= static_cast<int64_t>(frames.size())) return false;
        const auto& f = frames[t];
        return std::binary_search(f.begin(), f.end(), id);
    }
    std::vector<std::pair<int64_t, uint32_t>> raster() const {
        std::vector<std::pair<int64_t, uint32_t>> r;
        for (size_t t = 0; t < frames.size(); ++t)
            for (uint32_t id : frames[t]) r.push_back({static_cast<int64_t>(t), id});
        return r;
    }
};

// Per-step replay of a model's synapse rule from a recorded spike history:
// the eager reference the lazy engine is compared against. Initial synapse
// values are taken from a snapshot of the freshly initialized store.
template <class Model>
std::vector<std::vector<float>> eager_synapse_replay(
    const Model& model, const adjacency_list& adj,
    const std::vector<std::vector<float>>& initial_fields, const spike_log& log,
    uint32_t delay, float dt, int64_t steps) {
    using syn_fields = typename Model::synapse_fields;
    auto result = initial_fields;
    const uint32_t n = adj.neuron_count();
    for (uint32_t src = 0; src < n; ++src) {
        auto row = adj.row(src);
        uint64_t base = static_cast<uint64_t>(src) * adj.deg_max();
        for (size_t k = 0; k < row.size(); ++k) {
            synapse_state<syn_fields> st;
            st.src_ = src;
            st.dst_ = row[k];
            st.template get<0>() = result[0][base + k];
            st.template get<1>() = result[1][base + k];
            st.template get<2>() = result[2][base + k];
            for (int64_t u = 0; u < steps; ++u)
                model.update_synapse(st, log.spiked(u - delay, src), log.spiked(u, row[k]),
                                     dt);
            result[0][base + k] = st.template get<0>();
            result[1][base + k] = st.template get<1>();
            result[2][base + k] = st.template get<2>();
        }
    }
    return result;
}

} // namespace synq::testing
