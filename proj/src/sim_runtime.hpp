#pragma once

#include <memory>
#include <optional>
#include <string>

#include "synq/analysis.hpp"
#include "synq/engine.hpp"
#include "synq/models/benchmarks.hpp"
#include "synq/params.hpp"

namespace synq {

// configuration shared by the CLI and the C API
struct sim_config {
    param_set params = builtin_defaults();
    engine_options engine;
    bool record_spikes = false;  // keep the full raster in memory
    std::optional<double> dt_ms;
    std::optional<uint32_t> delay_steps;
};

// Type-erased simulation: one engine instantiation per shipped model behind
// a small virtual interface so runtime consumers (CLI, C API) can drive any
// of them uniformly.
class sim_base {
public:
    virtual ~sim_base() = default;

    virtual void step() = 0;
    virtual void run(int64_t steps) = 0;
    virtual void flush() = 0;

    virtual model_kind kind() const = 0;
    virtual uint32_t neurons() const = 0;
    virtual uint64_t synapses() const = 0;  // realized edge count
    virtual uint64_t synapse_capacity() const = 0;
    virtual int64_t now() const = 0;
    virtual double dt() const = 0;
    virtual uint32_t delay() const = 0;
    virtual uint64_t seed() const = 0;
    virtual bool deterministic() const = 0;
    virtual unsigned workers() const = 0;
    virtual double scale_c() const = 0;

    virtual const engine_counters& counters() const = 0;
    virtual const phase_seconds& timings() const = 0;
    virtual engine_memory memory_actual() const = 0;

    // rate over the measured population with the warm-up window discarded
    virtual double measured_rate() const = 0;
    virtual uint64_t measured_spike_count() const = 0;
    virtual uint32_t measured_neurons() const = 0;
    virtual int64_t warmup_steps() const = 0;

    virtual const spike_raster& raster() const = 0;  // empty unless recording

    void write_raster_to(const std::string& path) const;
    void write_stats(std::ostream& out) const;
    void write_stats_to(const std::string& path) const;  // "-" or "" = stdout
};

std::unique_ptr<sim_base> make_sim(model_kind kind, uint32_t neurons, const sim_config& cfg);
std::unique_ptr<sim_base> make_sim_from_desc(model_kind kind, const network_desc& desc,
                                             const sim_config& cfg);
std::unique_ptr<sim_base> make_sim_for_synapses(model_kind kind, uint64_t synapses,
                                                const sim_config& cfg);

} // namespace synq
