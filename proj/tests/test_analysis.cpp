#include <doctest.h>

#include <sstream>

#include "synq/analysis.hpp"
#include "synq/engine.hpp"
#include "synq/models/benchmarks.hpp"
#include "support/probes.hpp"

using namespace synq;

TEST_CASE("scaling constant anchors at the original sizes") {
    CHECK(scaling_constant(model_kind::vogels, 4000) == 1.0);
    CHECK(scaling_constant(model_kind::brunel, 20000) == 1.0);
    CHECK(scaling_constant(model_kind::brunel_plus, 20000) == 1.0);
    CHECK(scaling_constant(model_kind::vogels, 40000) == doctest::Approx(0.01));
    CHECK(scaling_constant(model_kind::vogels, 8000) == doctest::Approx(0.25));
    CHECK_THROWS(scaling_constant(model_kind::pingpong, 200));
    CHECK_THROWS(scaling_constant(model_kind::vogels, 0));
}

TEST_CASE("firing rate boundaries") {
    spike_raster r;
    r.neurons = 10;
    CHECK(firing_rate(r, 10, 5) == 0.0);
    for (int64_t t = 0; t < 5; ++t)
        for (uint32_t i = 0; i < 10; ++i) r.records.push_back({t, i});
    CHECK(firing_rate(r, 10, 5) == 1.0);
    CHECK_THROWS(firing_rate(r, 10, 0));
}

TEST_CASE("measured rate matches a hand count of the flag network") {
    auto b = build_pingpong(builtin_defaults());
    engine_options opt;
    opt.deterministic = true;
    opt.seed = 4;
    network<pingpong_model> net(b.desc, b.model, opt);
    testing::spike_log log;
    net.set_spike_tap(std::ref(log));
    net.run(10);
    uint64_t hand_count = 0;
    for (const auto& f : log.frames) hand_count += f.size();
    CHECK(firing_rate(hand_count, 200, 10) ==
          doctest::Approx(static_cast<double>(hand_count) / 2000.0));
    CHECK(net.counters().spikes == hand_count);
}

TEST_CASE("rate retention bands per model") {
    CHECK(rate_retention(model_kind::vogels, 1.0, 1.0));
    CHECK(rate_retention(model_kind::vogels, 1.9, 1.0));
    CHECK(rate_retention(model_kind::vogels, 0.51, 1.0));
    CHECK(!rate_retention(model_kind::vogels, 2.5, 1.0));
    CHECK(!rate_retention(model_kind::vogels, 0.4, 1.0));
    CHECK(rate_retention(model_kind::brunel, 1.2, 1.0));
    CHECK(!rate_retention(model_kind::brunel, 1.3, 1.0));
    CHECK(!rate_retention(model_kind::brunel, 0.7, 1.0));
    CHECK_THROWS(rate_retention(model_kind::pingpong, 1.0, 1.0));
}

TEST_CASE("memory accounting reproduces the canonical per-unit numbers") {
    auto v = memory_estimate(model_kind::vogels);
    CHECK(v.neuron_total() == 48.0);
    CHECK(v.synapse_total() == 4.0);
    auto b = memory_estimate(model_kind::brunel);
    CHECK(b.neuron_total() == 68.0);
    CHECK(b.synapse_total() == 4.0);
    auto bp = memory_estimate(model_kind::brunel_plus);
    CHECK(bp.neuron_fields == 8.0);
    CHECK(bp.neuron_spikes == 60.0);
    CHECK(bp.neuron_bitmasks == 6.25);
    CHECK(bp.neuron_ages == 4.0);
    CHECK(bp.neuron_expirations == 4.0);
    CHECK(bp.neuron_total() == 82.25);
    CHECK(bp.synapse_adjacency == 4.0);
    CHECK(bp.synapse_fields == 12.0);
    CHECK(bp.synapse_total() == 16.0);
    CHECK_THROWS(memory_estimate(model_kind::pingpong));
}

TEST_CASE("memory totals are additive and zero at zero size") {
    for (auto kind : {model_kind::vogels, model_kind::brunel, model_kind::brunel_plus}) {
        auto m = memory_estimate(kind);
        CHECK(m.total_bytes(0, 0) == 0.0);
        CHECK(m.total_bytes(1000, 50000) ==
              doctest::Approx(m.neuron_total() * 1000 + m.synapse_total() * 50000));
        CHECK(m.neuron_total() == doctest::Approx(m.neuron_fields + m.neuron_spikes +
                                                  m.neuron_bitmasks + m.neuron_ages +
                                                  m.neuron_expirations));
    }
}

TEST_CASE("history bitmask budget equals one bit per retained frame") {
    // 6.25 B = 50 bits: the canonical accounting and the engine's lazy
    // history depth describe the same 50-frame window
    auto bp = memory_estimate(model_kind::brunel_plus);
    CHECK(bp.neuron_bitmasks * 8.0 == lazy_history_default);
    auto ps = builtin_defaults();
    auto b = build_brunel_plus(100, ps);
    engine_options opt;
    opt.deterministic = true;
    network<brunel_plus_model> net(b.desc, b.model, opt);
    CHECK(net.history_frames() == lazy_history_default);
}

TEST_CASE("raster text format round-trips bit-exactly") {
    spike_raster r;
    r.dt = 0.1;
    r.neurons = 500;
    xorshift rng(21);
    int64_t t = 0;
    for (int i = 0; i < 1000; ++i) {
        t += rng() % 3;
        r.records.push_back({t, rng() % 500});
    }
    std::stringstream buf;
    write_raster(buf, r);
    std::string first = buf.str();
    auto back = read_raster(buf);
    CHECK(back.dt == r.dt);
    CHECK(back.neurons == r.neurons);
    REQUIRE(back.records.size() == r.records.size());
    for (size_t i = 0; i < r.records.size(); ++i) {
        CHECK(back.records[i].step == r.records[i].step);
        CHECK(back.records[i].neuron == r.records[i].neuron);
    }
    std::stringstream buf2;
    write_raster(buf2, back);
    CHECK(buf2.str() == first);
}

TEST_CASE("model names parse both spellings of brunel+") {
    CHECK(parse_model("brunel+") == model_kind::brunel_plus);
    CHECK(parse_model("brunel_plus") == model_kind::brunel_plus);
    CHECK(parse_model("vogels") == model_kind::vogels);
    CHECK_THROWS(parse_model("izhi"));
}
