#include "synq/synq.h"

#include <algorithm>
#include <cstring>
#include <functional>
#include <new>
#include <string>

#include "sim_runtime.hpp"

using namespace synq;

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown error"; }

template <class Fn>
synq_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SYNQ_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        set_error(e.what());
        return SYNQ_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc& e) {
        set_error(e.what());
        return SYNQ_ERR_NO_MEMORY;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return SYNQ_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SYNQ_ERR_INTERNAL;
    }
}

model_kind parse_or_throw(const char* model) {
    if (!model) throw std::invalid_argument("model name is null");
    return parse_model(model);
}

synq_status make_common(const char* model, const synq_opts* opts, synq_sim** out,
                        const std::function<std::unique_ptr<sim_base>(model_kind,
                                                                      const sim_config&)>& make);

void fill_memory(const memory_breakdown& m, uint64_t neurons, uint64_t synapses,
                 synq_memory* out) {
    out->neuron_fields = m.neuron_fields;
    out->neuron_spikes = m.neuron_spikes;
    out->neuron_bitmasks = m.neuron_bitmasks;
    out->neuron_ages = m.neuron_ages;
    out->neuron_expirations = m.neuron_expirations;
    out->synapse_adjacency = m.synapse_adjacency;
    out->synapse_fields = m.synapse_fields;
    out->neuron_total = m.neuron_total();
    out->synapse_total = m.synapse_total();
    out->total_bytes = m.total_bytes(neurons, synapses);
}

} // namespace

struct synq_opts {
    sim_config cfg;
};

struct synq_sim {
    std::unique_ptr<sim_base> impl;
};

namespace {

synq_status make_common(const char* model, const synq_opts* opts, synq_sim** out,
                        const std::function<std::unique_ptr<sim_base>(model_kind,
                                                                      const sim_config&)>& make) {
    if (!out) {
        set_error("output handle is null");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    model_kind kind;
    try {
        kind = parse_or_throw(model);
    } catch (const std::exception& e) {
        set_error(e.what());
        return SYNQ_ERR_UNKNOWN_MODEL;
    }
    static const sim_config default_cfg;
    const sim_config& cfg = opts ? opts->cfg : default_cfg;
    return guarded([&] {
        auto sim = new synq_sim{make(kind, cfg)};
        *out = sim;
        return SYNQ_OK;
    });
}

} // namespace

extern "C" {

const char* synq_version(void) { return "1.0.0"; }

const char* synq_status_name(synq_status status) {
    switch (status) {
        case SYNQ_OK: return "ok";
        case SYNQ_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SYNQ_ERR_UNKNOWN_MODEL: return "unknown model";
        case SYNQ_ERR_IO: return "io error";
        case SYNQ_ERR_NO_MEMORY: return "out of memory";
        case SYNQ_ERR_INTERNAL: return "internal error";
    }
    return "?";
}

const char* synq_last_error(void) { return g_last_error.c_str(); }

synq_opts* synq_opts_new(void) {
    try {
        return new synq_opts();
    } catch (...) {
        return nullptr;
    }
}

void synq_opts_free(synq_opts* opts) { delete opts; }

#define CHECK_HANDLE(h)                                   \
    do {                                                  \
        if (!(h)) {                                       \
            set_error("null handle");                     \
            return SYNQ_ERR_INVALID_ARGUMENT;             \
        }                                                 \
    } while (0)

synq_status synq_opts_seed(synq_opts* opts, uint64_t seed) {
    CHECK_HANDLE(opts);
    opts->cfg.engine.seed = seed;
    return SYNQ_OK;
}

synq_status synq_opts_threads(synq_opts* opts, uint32_t threads) {
    CHECK_HANDLE(opts);
    opts->cfg.engine.threads = threads;
    return SYNQ_OK;
}

synq_status synq_opts_deterministic(synq_opts* opts, int on) {
    CHECK_HANDLE(opts);
    opts->cfg.engine.deterministic = on != 0;
    return SYNQ_OK;
}

synq_status synq_opts_dt(synq_opts* opts, double dt_ms) {
    CHECK_HANDLE(opts);
    if (!(dt_ms > 0)) {
        set_error("dt must be > 0");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    opts->cfg.dt_ms = dt_ms;
    return SYNQ_OK;
}

synq_status synq_opts_delay(synq_opts* opts, uint32_t steps) {
    CHECK_HANDLE(opts);
    if (steps < 1) {
        set_error("delay must be >= 1 timestep");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    opts->cfg.delay_steps = steps;
    return SYNQ_OK;
}

synq_status synq_opts_record(synq_opts* opts, int record_spikes) {
    CHECK_HANDLE(opts);
    opts->cfg.record_spikes = record_spikes != 0;
    return SYNQ_OK;
}

synq_status synq_opts_defaults_file(synq_opts* opts, const char* path) {
    CHECK_HANDLE(opts);
    if (!path) {
        set_error("path is null");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        merge_params_file(opts->cfg.params, path);
        return SYNQ_OK;
    });
}

synq_status synq_opts_param(synq_opts* opts, const char* key, double value) {
    CHECK_HANDLE(opts);
    if (!key || !*key) {
        set_error("parameter key is null or empty");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    opts->cfg.params[key] = value;
    return SYNQ_OK;
}

synq_status synq_sim_new(const char* model, uint32_t neurons, const synq_opts* opts,
                         synq_sim** out) {
    return make_common(model, opts, out, [&](model_kind k, const sim_config& cfg) {
        return make_sim(k, neurons, cfg);
    });
}

synq_status synq_sim_new_for_synapses(const char* model, uint64_t synapses,
                                      const synq_opts* opts, synq_sim** out) {
    return make_common(model, opts, out, [&](model_kind k, const sim_config& cfg) {
        return make_sim_for_synapses(k, synapses, cfg);
    });
}

synq_status synq_sim_new_from_file(const char* model, const char* desc_path,
                                   const synq_opts* opts, synq_sim** out) {
    if (!desc_path) {
        set_error("descriptor path is null");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    std::string path = desc_path;
    return make_common(model, opts, out, [&](model_kind k, const sim_config& cfg) {
        network_desc desc = load_desc(path);
        validate_or_throw(desc);
        return make_sim_from_desc(k, desc, cfg);
    });
}

void synq_sim_free(synq_sim* sim) { delete sim; }

synq_status synq_sim_step(synq_sim* sim) {
    CHECK_HANDLE(sim);
    return guarded([&] {
        sim->impl->step();
        return SYNQ_OK;
    });
}

synq_status synq_sim_run(synq_sim* sim, int64_t steps) {
    CHECK_HANDLE(sim);
    if (steps < 0) {
        set_error("step count must be >= 0");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        sim->impl->run(steps);
        return SYNQ_OK;
    });
}

synq_status synq_sim_flush(synq_sim* sim) {
    CHECK_HANDLE(sim);
    return guarded([&] {
        sim->impl->flush();
        return SYNQ_OK;
    });
}

uint32_t synq_sim_neurons(const synq_sim* sim) { return sim ? sim->impl->neurons() : 0; }
uint64_t synq_sim_synapses(const synq_sim* sim) { return sim ? sim->impl->synapses() : 0; }
uint64_t synq_sim_synapse_capacity(const synq_sim* sim) {
    return sim ? sim->impl->synapse_capacity() : 0;
}
int64_t synq_sim_now(const synq_sim* sim) { return sim ? sim->impl->now() : 0; }
double synq_sim_dt(const synq_sim* sim) { return sim ? sim->impl->dt() : 0.0; }
uint32_t synq_sim_delay(const synq_sim* sim) { return sim ? sim->impl->delay() : 0; }
uint64_t synq_sim_seed(const synq_sim* sim) { return sim ? sim->impl->seed() : 0; }
double synq_sim_scaling(const synq_sim* sim) { return sim ? sim->impl->scale_c() : 0.0; }

synq_status synq_sim_firing_rate(const synq_sim* sim, double* out) {
    CHECK_HANDLE(sim);
    CHECK_HANDLE(out);
    *out = sim->impl->measured_rate();
    return SYNQ_OK;
}

synq_status synq_sim_spike_count(const synq_sim* sim, uint64_t* out) {
    CHECK_HANDLE(sim);
    CHECK_HANDLE(out);
    *out = sim->impl->counters().spikes;
    return SYNQ_OK;
}

double synq_sim_seconds(const synq_sim* sim, synq_phase phase) {
    if (!sim) return 0.0;
    const auto& t = sim->impl->timings();
    switch (phase) {
        case SYNQ_PHASE_CONSTRUCT: return t.construct;
        case SYNQ_PHASE_INIT_NEURONS: return t.init_neurons;
        case SYNQ_PHASE_INIT_SYNAPSES: return t.init_synapses;
        case SYNQ_PHASE_SIMULATE: return t.simulate;
    }
    return 0.0;
}

synq_status synq_sim_write_raster(const synq_sim* sim, const char* path) {
    CHECK_HANDLE(sim);
    if (!path) {
        set_error("raster path is null");
        return SYNQ_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        sim->impl->write_raster_to(path);
        return SYNQ_OK;
    });
}

synq_status synq_sim_write_stats(const synq_sim* sim, const char* path) {
    CHECK_HANDLE(sim);
    return guarded([&] {
        sim->impl->write_stats_to(path ? path : "");
        return SYNQ_OK;
    });
}

synq_status synq_memory_estimate(const char* model, uint64_t neurons, uint64_t synapses,
                                 synq_memory* out) {
    CHECK_HANDLE(out);
    model_kind kind;
    try {
        kind = parse_or_throw(model);
    } catch (const std::exception& e) {
        set_error(e.what());
        return SYNQ_ERR_UNKNOWN_MODEL;
    }
    return guarded([&] {
        fill_memory(memory_estimate(kind), neurons, synapses, out);
        return SYNQ_OK;
    });
}

synq_status synq_sim_memory_actual(const synq_sim* sim, synq_memory* out) {
    CHECK_HANDLE(sim);
    CHECK_HANDLE(out);
    engine_memory m = sim->impl->memory_actual();
    double n = sim->impl->neurons();
    double s = std::max<uint64_t>(1, sim->impl->synapse_capacity()
                                          ? sim->impl->synapse_capacity()
                                          : sim->impl->synapses());
    out->neuron_fields = (m.neuron_fields + m.neuron_rng) / std::max(1.0, n);
    out->neuron_spikes = m.spike_queues / std::max(1.0, n);
    out->neuron_bitmasks = m.spike_bitmasks / std::max(1.0, n);
    out->neuron_ages = m.ages / std::max(1.0, n);
    out->neuron_expirations = m.expirations / std::max(1.0, n);
    out->synapse_adjacency = static_cast<double>(m.adjacency) / s;
    out->synapse_fields = static_cast<double>(m.synapse_fields) / s;
    out->neuron_total = out->neuron_fields + out->neuron_spikes + out->neuron_bitmasks +
                        out->neuron_ages + out->neuron_expirations;
    out->synapse_total = out->synapse_adjacency + out->synapse_fields;
    out->total_bytes = static_cast<double>(m.total());
    return SYNQ_OK;
}

synq_status synq_scaling_constant(const char* model, uint64_t neurons, double* out) {
    CHECK_HANDLE(out);
    model_kind kind;
    try {
        kind = parse_or_throw(model);
    } catch (const std::exception& e) {
        set_error(e.what());
        return SYNQ_ERR_UNKNOWN_MODEL;
    }
    return guarded([&] {
        *out = scaling_constant(kind, neurons);
        return SYNQ_OK;
    });
}

synq_status synq_solve_neurons(const char* model, uint64_t synapses, uint32_t* out) {
    CHECK_HANDLE(out);
    model_kind kind;
    try {
        kind = parse_or_throw(model);
    } catch (const std::exception& e) {
        set_error(e.what());
        return SYNQ_ERR_UNKNOWN_MODEL;
    }
    return guarded([&] {
        *out = solve_neurons(kind, synapses, builtin_defaults());
        return SYNQ_OK;
    });
}

} // extern "C"
