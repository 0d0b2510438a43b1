#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace synq {

enum class model_kind { pingpong, vogels, brunel, brunel_plus };

model_kind parse_model(const std::string& name);  // throws on unknown name
const char* model_name(model_kind kind);

// Weight scaling constant keeping the benchmark models' firing patterns
// across network sizes: delivered weights are multiplied by c before being
// added to the membrane. 1.0 exactly at the models' original sizes
// (vogels 4000, brunel 20000).
double scaling_constant(model_kind kind, uint64_t neurons);

struct spike_record {
    int64_t step;
    uint32_t neuron;
};

// Time-ordered spike records plus the header data the text format carries.
struct spike_raster {
    std::vector<spike_record> records;
    double dt = 1.0;       // ms
    uint32_t neurons = 0;  // id space size
};

// average ratio of neurons spiking per step
double firing_rate(const spike_raster& raster, uint64_t neurons, int64_t steps);
double firing_rate(uint64_t spike_count, uint64_t neurons, int64_t steps);

// Band check for rate preservation across sizes: vogels passes within
// [0.5, 2.0] x original, brunel within [0.8, 1.25] x original.
bool rate_retention(model_kind kind, double rate_at_size, double rate_at_original);

// Per-unit memory accounting of the simulator's canonical dense layout
// (per-neuron: field bytes, delay-deep spike queues, history bitmasks,
// ages, expiration queue; per-synapse: adjacency cell, field bytes), plus
// linear totals. memory_estimate uses each benchmark's canonical timestep
// and delay; engines report their actual allocation alongside.
struct memory_breakdown {
    double neuron_fields = 0;
    double neuron_spikes = 0;
    double neuron_bitmasks = 0;
    double neuron_ages = 0;
    double neuron_expirations = 0;
    double synapse_adjacency = 0;
    double synapse_fields = 0;

    double neuron_total() const {
        return neuron_fields + neuron_spikes + neuron_bitmasks + neuron_ages +
               neuron_expirations;
    }
    double synapse_total() const { return synapse_adjacency + synapse_fields; }
    double total_bytes(uint64_t neurons, uint64_t synapses) const {
        return neuron_total() * static_cast<double>(neurons) +
               synapse_total() * static_cast<double>(synapses);
    }
};

memory_breakdown memory_estimate(model_kind kind);

// Text raster format: header "# dt=<ms> N=<count>", then one
// "step<TAB>neuron_id" line per record, sorted by (step, neuron).
void write_raster(std::ostream& out, const spike_raster& raster);
void write_raster_file(const std::string& path, const spike_raster& raster);
spike_raster read_raster(std::istream& in);
spike_raster read_raster_file(const std::string& path);

} // namespace synq
