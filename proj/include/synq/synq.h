/* synq - clock-driven spiking neural network simulation, C interface.
 *
 * All functions returning synq_status report SYNQ_OK on success; on any
 * error they leave outputs untouched and record a human-readable detail
 * string retrievable with synq_last_error() (thread-local). Handles are
 * opaque and must be released with the matching _free call.
 */
#ifndef SYNQ_H
#define SYNQ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum synq_status {
    SYNQ_OK = 0,
    SYNQ_ERR_INVALID_ARGUMENT = 1,
    SYNQ_ERR_UNKNOWN_MODEL = 2,
    SYNQ_ERR_IO = 3,
    SYNQ_ERR_NO_MEMORY = 4,
    SYNQ_ERR_INTERNAL = 5
} synq_status;

const char* synq_version(void);
const char* synq_status_name(synq_status status);
const char* synq_last_error(void);

/* ---- run options ---- */

typedef struct synq_opts synq_opts;

synq_opts* synq_opts_new(void);
void synq_opts_free(synq_opts* opts);

synq_status synq_opts_seed(synq_opts* opts, uint64_t seed);
synq_status synq_opts_threads(synq_opts* opts, uint32_t threads); /* 0 = hardware */
synq_status synq_opts_deterministic(synq_opts* opts, int on);
synq_status synq_opts_dt(synq_opts* opts, double dt_ms);
synq_status synq_opts_delay(synq_opts* opts, uint32_t steps);
synq_status synq_opts_record(synq_opts* opts, int record_spikes);
/* merge a line-oriented key=value parameter file over the defaults */
synq_status synq_opts_defaults_file(synq_opts* opts, const char* path);
/* set one model parameter, e.g. "brunel.g", 5.0 */
synq_status synq_opts_param(synq_opts* opts, const char* key, double value);

/* ---- simulations ---- */

typedef struct synq_sim synq_sim;

/* model is one of "pingpong", "vogels", "brunel", "brunel+" */
synq_status synq_sim_new(const char* model, uint32_t neurons, const synq_opts* opts,
                         synq_sim** out);
/* size the network by expected synapse count instead of neurons */
synq_status synq_sim_new_for_synapses(const char* model, uint64_t synapses,
                                      const synq_opts* opts, synq_sim** out);
/* build from a network descriptor file (populations/connection/dt/delay) */
synq_status synq_sim_new_from_file(const char* model, const char* desc_path,
                                   const synq_opts* opts, synq_sim** out);
void synq_sim_free(synq_sim* sim);

synq_status synq_sim_step(synq_sim* sim);
synq_status synq_sim_run(synq_sim* sim, int64_t steps);
/* bring all synapse state current (lazy plasticity catch-up) */
synq_status synq_sim_flush(synq_sim* sim);

uint32_t synq_sim_neurons(const synq_sim* sim);
uint64_t synq_sim_synapses(const synq_sim* sim);
uint64_t synq_sim_synapse_capacity(const synq_sim* sim);
int64_t synq_sim_now(const synq_sim* sim);
double synq_sim_dt(const synq_sim* sim);
uint32_t synq_sim_delay(const synq_sim* sim);
uint64_t synq_sim_seed(const synq_sim* sim);
double synq_sim_scaling(const synq_sim* sim);

/* average ratio of measured-population neurons spiking per step, warm-up
 * discarded (see the measure.* parameters) */
synq_status synq_sim_firing_rate(const synq_sim* sim, double* out);
synq_status synq_sim_spike_count(const synq_sim* sim, uint64_t* out);

typedef enum synq_phase {
    SYNQ_PHASE_CONSTRUCT = 0,
    SYNQ_PHASE_INIT_NEURONS = 1,
    SYNQ_PHASE_INIT_SYNAPSES = 2,
    SYNQ_PHASE_SIMULATE = 3
} synq_phase;

double synq_sim_seconds(const synq_sim* sim, synq_phase phase);

/* requires synq_opts_record(opts, 1); text format "# dt=<ms> N=<count>"
 * header followed by step<TAB>neuron lines */
synq_status synq_sim_write_raster(const synq_sim* sim, const char* path);
/* line-oriented key=value summary; path NULL, "" or "-" writes to stdout */
synq_status synq_sim_write_stats(const synq_sim* sim, const char* path);

/* ---- analysis helpers ---- */

typedef struct synq_memory {
    double neuron_fields;
    double neuron_spikes;
    double neuron_bitmasks;
    double neuron_ages;
    double neuron_expirations;
    double synapse_adjacency;
    double synapse_fields;
    double neuron_total;  /* bytes per neuron */
    double synapse_total; /* bytes per synapse */
    double total_bytes;   /* scaled by the given counts */
} synq_memory;

/* canonical per-neuron/per-synapse accounting for the benchmark models */
synq_status synq_memory_estimate(const char* model, uint64_t neurons, uint64_t synapses,
                                 synq_memory* out);
/* the running simulation's actual allocation, mapped onto the same slots */
synq_status synq_sim_memory_actual(const synq_sim* sim, synq_memory* out);

/* Eq. weight-scaling constant; exactly 1 at the original benchmark sizes */
synq_status synq_scaling_constant(const char* model, uint64_t neurons, double* out);
/* closest neuron count whose expected synapse count matches the target */
synq_status synq_solve_neurons(const char* model, uint64_t synapses, uint32_t* out);

#ifdef __cplusplus
}
#endif

#endif /* SYNQ_H */
