#include "sim_runtime.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

namespace synq {

namespace {

template <class M>
class sim_impl final : public sim_base {
public:
    sim_impl(model_kind kind, model_build<M> build, const sim_config& cfg)
        : kind_(kind),
          measure_begin_(build.measure_begin),
          measure_end_(build.measure_end),
          scale_c_(build.scale_c),
          record_(cfg.record_spikes) {
        if (cfg.dt_ms) build.desc.dt = *cfg.dt_ms;
        if (cfg.delay_steps) build.desc.delay = *cfg.delay_steps;
        warmup_steps_ =
            static_cast<int64_t>(std::ceil(param(cfg.params, "measure.warmup_ms") / build.desc.dt));
        if (param(cfg.params, "measure.exclude_stimulus") == 0.0) {
            measure_begin_ = 0;
            measure_end_ = build.desc.neuron_count();
        }
        net_ = std::make_unique<network<M>>(build.desc, build.model, cfg.engine);
        raster_.dt = net_->dt();
        raster_.neurons = net_->neuron_count();
        net_->set_spike_tap([this](int64_t t, std::span<const uint32_t> frame) {
            auto lo = std::lower_bound(frame.begin(), frame.end(), measure_begin_);
            auto hi = std::lower_bound(frame.begin(), frame.end(), measure_end_);
            step_counts_.push_back(static_cast<uint32_t>(hi - lo));
            if (record_)
                for (uint32_t id : frame) raster_.records.push_back({t, id});
        });
    }

    void step() override { net_->step(); }
    void run(int64_t steps) override { net_->run(steps); }
    void flush() override { net_->flush(); }

    model_kind kind() const override { return kind_; }
    uint32_t neurons() const override { return net_->neuron_count(); }
    uint64_t synapses() const override { return net_->edge_count(); }
    uint64_t synapse_capacity() const override { return net_->synapse_capacity(); }
    int64_t now() const override { return net_->now(); }
    double dt() const override { return net_->dt(); }
    uint32_t delay() const override { return net_->delay(); }
    uint64_t seed() const override { return net_->seed(); }
    bool deterministic() const override { return net_->deterministic(); }
    unsigned workers() const override { return net_->worker_count(); }
    double scale_c() const override { return scale_c_; }

    const engine_counters& counters() const override { return net_->counters(); }
    const phase_seconds& timings() const override { return net_->timings(); }
    engine_memory memory_actual() const override { return net_->memory(); }

    double measured_rate() const override {
        int64_t steps = now() - warmup_steps_;
        if (steps <= 0 || measure_end_ <= measure_begin_) return 0.0;
        return firing_rate(measured_spike_count(), measure_end_ - measure_begin_, steps);
    }
    uint64_t measured_spike_count() const override {
        uint64_t total = 0;
        for (size_t i = static_cast<size_t>(std::min<int64_t>(warmup_steps_, now()));
             i < step_counts_.size(); ++i)
            total += step_counts_[i];
        return total;
    }
    uint32_t measured_neurons() const override { return measure_end_ - measure_begin_; }
    int64_t warmup_steps() const override { return warmup_steps_; }

    const spike_raster& raster() const override { return raster_; }

    network<M>& net() { return *net_; }

private:
    model_kind kind_;
    uint32_t measure_begin_, measure_end_;
    double scale_c_;
    bool record_;
    int64_t warmup_steps_ = 0;
    std::unique_ptr<network<M>> net_;
    std::vector<uint32_t> step_counts_;
    spike_raster raster_;
};

} // namespace

void sim_base::write_raster_to(const std::string& path) const {
    write_raster_file(path, raster());
}

void sim_base::write_stats(std::ostream& out) const {
    const auto& c = counters();
    const auto& t = timings();
    auto mem = memory_actual();
    double setup = t.construct + t.init_neurons + t.init_synapses;
    double rate = measured_rate();

    out << "model=" << model_name(kind()) << "\n";
    out << "neurons=" << neurons() << "\n";
    out << "synapses=" << synapses() << "\n";
    out << "synapse_capacity=" << synapse_capacity() << "\n";
    out << "seed=" << seed() << "\n";
    out << "threads=" << workers() << "\n";
    out << "deterministic=" << (deterministic() ? 1 : 0) << "\n";
    out << "dt_ms=" << dt() << "\n";
    out << "delay_steps=" << delay() << "\n";
    out << "steps=" << now() << "\n";
    out << "scale_c=" << scale_c() << "\n";
    out << "construct_s=" << t.construct << "\n";
    out << "init_neurons_s=" << t.init_neurons << "\n";
    out << "init_synapses_s=" << t.init_synapses << "\n";
    out << "setup_s=" << setup << "\n";
    out << "sim_s=" << t.simulate << "\n";
    out << "steps_per_s=" << (t.simulate > 0 ? static_cast<double>(now()) / t.simulate : 0.0)
        << "\n";
    out << "spikes_total=" << c.spikes << "\n";
    out << "deliveries=" << c.deliveries << "\n";
    out << "synapse_updates=" << c.synapse_updates << "\n";
    out << "firing_rate=" << rate << "\n";
    out << "firing_rate_hz=" << (dt() > 0 ? rate * 1000.0 / dt() : 0.0) << "\n";
    out << "measured_neurons=" << measured_neurons() << "\n";
    out << "warmup_steps=" << warmup_steps() << "\n";
    out << "mem_actual_bytes=" << mem.total() << "\n";
    try {
        auto est = memory_estimate(kind());
        out << "mem_est_neuron_b=" << est.neuron_total() << "\n";
        out << "mem_est_synapse_b=" << est.synapse_total() << "\n";
        out << "mem_est_total_bytes="
            << static_cast<uint64_t>(est.total_bytes(neurons(), synapses())) << "\n";
    } catch (const std::invalid_argument&) {
        // no canonical accounting for this model
    }
    out.flush();
}

void sim_base::write_stats_to(const std::string& path) const {
    if (path.empty() || path == "-") {
        write_stats(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open stats file for writing: " + path);
    write_stats(out);
    if (!out) throw std::runtime_error("failed writing stats file: " + path);
}

std::unique_ptr<sim_base> make_sim_from_desc(model_kind kind, const network_desc& desc,
                                             const sim_config& cfg) {
    switch (kind) {
        case model_kind::pingpong:
            return std::make_unique<sim_impl<pingpong_model>>(
                kind, build_pingpong_from_desc(desc, cfg.params), cfg);
        case model_kind::vogels:
            return std::make_unique<sim_impl<vogels_model>>(
                kind, build_vogels_from_desc(desc, cfg.params), cfg);
        case model_kind::brunel:
            return std::make_unique<sim_impl<brunel_model>>(
                kind, build_brunel_from_desc(desc, cfg.params), cfg);
        case model_kind::brunel_plus:
            return std::make_unique<sim_impl<brunel_plus_model>>(
                kind, build_brunel_plus_from_desc(desc, cfg.params), cfg);
    }
    throw std::invalid_argument("make_sim_from_desc: bad model kind");
}

std::unique_ptr<sim_base> make_sim(model_kind kind, uint32_t neurons, const sim_config& cfg) {
    switch (kind) {
        case model_kind::pingpong:
            return std::make_unique<sim_impl<pingpong_model>>(kind, build_pingpong(cfg.params),
                                                              cfg);
        case model_kind::vogels:
            return std::make_unique<sim_impl<vogels_model>>(
                kind, build_vogels(neurons, cfg.params), cfg);
        case model_kind::brunel:
            return std::make_unique<sim_impl<brunel_model>>(
                kind, build_brunel(neurons, cfg.params), cfg);
        case model_kind::brunel_plus:
            return std::make_unique<sim_impl<brunel_plus_model>>(
                kind, build_brunel_plus(neurons, cfg.params), cfg);
    }
    throw std::invalid_argument("make_sim: bad model kind");
}

std::unique_ptr<sim_base> make_sim_for_synapses(model_kind kind, uint64_t synapses,
                                                const sim_config& cfg) {
    uint32_t n = solve_neurons(kind, synapses, cfg.params);
    return make_sim(kind, n, cfg);
}

} // namespace synq
