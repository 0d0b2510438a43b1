#include <doctest.h>

#include <cstring>

#include "synq/engine.hpp"
#include "synq/models/benchmarks.hpp"
#include "support/probes.hpp"

using namespace synq;
using namespace synq::testing;

namespace {

template <class M>
std::vector<std::vector<float>> snapshot_synapses(network<M>& net) {
    std::vector<std::vector<float>> out;
    out.emplace_back(net.template synapse_field<0>().begin(),
                     net.template synapse_field<0>().end());
    out.emplace_back(net.template synapse_field<1>().begin(),
                     net.template synapse_field<1>().end());
    out.emplace_back(net.template synapse_field<2>().begin(),
                     net.template synapse_field<2>().end());
    return out;
}

bool bit_identical(const std::vector<float>& a, const std::vector<float>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0);
}

// run a brunel+ instance lazily, then replay the same spike history eagerly
// and compare synapse state bit for bit
void check_lazy_equals_eager(uint32_t neurons, int64_t steps, uint32_t history_frames,
                             uint64_t seed) {
    param_set ps = builtin_defaults();
    auto build = build_brunel_plus(neurons, ps);
    engine_options opt;
    opt.seed = seed;
    opt.deterministic = true;
    opt.debug_checks = true;
    opt.history_frames = history_frames;
    network<brunel_plus_model> net(build.desc, build.model, opt);

    auto initial = snapshot_synapses(net);
    spike_log log;
    net.set_spike_tap(std::ref(log));
    net.run(steps);
    net.flush();

    auto eager = eager_synapse_replay(build.model, net.graph(), initial, log, net.delay(),
                                      net.dt(), steps);
    auto lazy = snapshot_synapses(net);
    CHECK(bit_identical(lazy[0], eager[0]));
    CHECK(bit_identical(lazy[1], eager[1]));
    CHECK(bit_identical(lazy[2], eager[2]));
}

} // namespace

TEST_CASE("lazy plasticity equals the eager replay (default history)") {
    check_lazy_equals_eager(120, 400, 0, 2024);
}

TEST_CASE("lazy plasticity equals the eager replay (tight history = eager mode)") {
    // history clamped to delay+1 forces a catch-up every step
    check_lazy_equals_eager(80, 200, 1, 7);
}

TEST_CASE("lazy plasticity equals the eager replay (odd history size)") {
    check_lazy_equals_eager(90, 333, 23, 99);
}

TEST_CASE("amortized synapse work equals eager work after the final flush") {
    param_set ps = builtin_defaults();
    auto build = build_brunel_plus(100, ps);
    engine_options opt;
    opt.seed = 5;
    opt.deterministic = true;
    network<brunel_plus_model> net(build.desc, build.model, opt);
    const int64_t steps = 500;
    net.run(steps);
    CHECK(net.counters().synapse_updates <= net.edge_count() * static_cast<uint64_t>(steps));
    net.flush();
    CHECK(net.counters().synapse_updates == net.edge_count() * static_cast<uint64_t>(steps));
}

namespace {

// never spikes; its one synapse counts how many steps were applied to it
struct silent_model {
    using neuron_fields = fields<uint8_t>;
    using synapse_fields = fields<float, float, float>;
    template <class It>
    void init(It it) const {
        it.template get<0>() = 0;
    }
    template <class It>
    bool update(It, float) const {
        return false;
    }
    template <class F, class T, class S>
    void receive(F, T, S) const {}
    template <class S>
    void init_synapse(S syn) const {
        syn.template get<0>() = 0.0f;
    }
    template <class S>
    void update_synapse(S& syn, bool, bool, float) const {
        syn.template get<0>() += 1.0f;  // counts applied steps
    }
};

} // namespace

TEST_CASE("ages never outrun the retained history") {
    param_set ps = builtin_defaults();
    auto build = build_brunel_plus(100, ps);
    engine_options opt;
    opt.seed = 13;
    opt.deterministic = true;
    opt.debug_checks = true;
    network<brunel_plus_model> net(build.desc, build.model, opt);
    const int64_t steps = 300;
    const int64_t history = net.history_frames();
    const int64_t delay = net.delay();
    for (int64_t t = 0; t < steps; ++t) {
        net.step();
        for (uint32_t age : net.ages()) {
            // frames (age - delay) .. t must all still be retained
            CHECK(static_cast<int64_t>(age) >= net.now() - history + delay);
            CHECK(static_cast<int64_t>(age) <= net.now());
        }
    }
}

TEST_CASE("a silent neuron is caught up in one batch when it expires") {
    // one neuron, self loop with p = 1 gives it a synapse; it never spikes
    network_desc d;
    d.populations = {{1}};
    d.connections = {{0, 0, 1.0}};
    d.delay = 1;

    engine_options opt;
    opt.deterministic = true;
    opt.history_frames = 10;
    network<silent_model> net(d, {}, opt);
    int64_t first_batch = -1;
    for (int64_t t = 0; t < 30; ++t) {
        net.step();
        if (first_batch < 0 && net.counters().expiry_batches > 0) first_batch = net.now();
    }
    // the neuron expired before its history (10 frames, delay 1) ran out,
    // and each expiry advances it by a full batch
    REQUIRE(first_batch > 1);
    CHECK(first_batch <= 10);
    CHECK(net.counters().expiry_batches > 1);
    net.flush();
    CHECK(net.synapse_field<0>()[0] == 30.0f);  // every step applied exactly once
}
