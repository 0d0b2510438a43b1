#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "synq/analysis.hpp"
#include "synq/models/lif.hpp"
#include "synq/network_desc.hpp"
#include "synq/params.hpp"
#include "synq/soa.hpp"

namespace synq {

// Two populations that take turns exciting one another. One bool-like flag
// per neuron: spike when set, set the target's flag on delivery.
struct pingpong_model {
    using neuron_fields = fields<uint8_t>;

    uint32_t first_pop = 100;

    template <class It>
    void init(It it) const {
        it.template get<0>() = it.id() < first_pop ? 1 : 0;
    }
    template <class It>
    bool update(It it, float) const {
        bool spike = it.template get<0>() != 0;
        it.template get<0>() = 0;
        return spike;
    }
    template <class From, class To>
    void receive(From, To to) const {
        to.template put<0>(uint8_t(1));
    }
};

// Self-sustained balanced network: the rest potential sits above threshold
// (the constant background excitation), inhibition keeps activity in check.
// Neuron fields: V, accumulated input, refractory countdown.
struct vogels_model {
    using neuron_fields = fields<float, float, float>;
    static constexpr bool uses_rng = true;
    enum : size_t { V = 0, ACC = 1, REF = 2 };

    lif_params lif;
    float w_exc = 0.0f;
    float w_inh = 0.0f;
    float scale_c = 1.0f;
    uint32_t n_exc = 0;
    float v_init_lo = 0.0f, v_init_hi = 0.0f;

    template <class It>
    void init(It it) const {
        it.template get<V>() =
            v_init_lo + static_cast<float>(it.rng().uniform01()) * (v_init_hi - v_init_lo);
        it.template get<ACC>() = 0.0f;
        it.template get<REF>() = 0.0f;
    }
    template <class It>
    bool update(It it, float dt) const {
        return lif_update<V, ACC, REF>(it, lif, dt);
    }
    template <class From, class To>
    void receive(From from, To to) const {
        lif_receive<ACC>(to, from.id() < n_exc ? w_exc : w_inh, scale_c);
    }
};

// Sparse balanced network driven by a population of Poisson firing neurons.
// Implemented on top of the same LIF building block as vogels; the update
// is specialized to spike randomly for the stimulus population and to
// delegate to the LIF rule otherwise (one fat callback over the single
// neuron layout).
struct brunel_model {
    using neuron_fields = fields<float, float, float>;
    static constexpr bool uses_rng = true;
    enum : size_t { V = 0, ACC = 1, REF = 2 };

    lif_params lif;
    float j_exc = 0.0f;   // excitatory and stimulus weight
    float j_inh = 0.0f;   // -g * j
    float scale_c = 1.0f;
    uint32_t n_exc = 0;
    uint32_t n_recurrent = 0;  // ids >= n_recurrent are the Poisson stimulus
    float p_spike = 0.0f;      // stimulus spike probability per step
    float v_init_hi = 0.0f;

    bool is_stimulus(uint32_t id) const { return id >= n_recurrent; }
    float weight_of(uint32_t src) const {
        return src < n_exc ? j_exc : (src < n_recurrent ? j_inh : j_exc);
    }

    template <class It>
    void init(It it) const {
        it.template get<V>() = static_cast<float>(it.rng().uniform01()) * v_init_hi;
        it.template get<ACC>() = 0.0f;
        it.template get<REF>() = 0.0f;
    }
    template <class It>
    bool update(It it, float dt) const {
        if (is_stimulus(it.id())) return poisson_update(it.rng(), p_spike);
        return lif_update<V, ACC, REF>(it, lif, dt);
    }
    template <class From, class To>
    void receive(From from, To to) const {
        lif_receive<ACC>(to, weight_of(from.id()), scale_c);
    }
};

// Brunel with plasticity: every synapse carries (weight, pre trace, post
// trace); recurrent excitatory synapses evolve under the trace rule, all
// others stay at their initial weight. Delivery reads the synapse weight.
struct brunel_plus_model : brunel_model {
    using synapse_fields = fields<float, float, float>;
    enum : size_t { W = 0, PT = 1, QT = 2 };

    stdp_params stdp;

    bool plastic(uint32_t src, uint32_t dst) const { return src < n_exc && dst < n_exc; }

    template <class Syn>
    void init_synapse(Syn syn) const {
        syn.template get<W>() = weight_of(syn.src());
        syn.template get<PT>() = 0.0f;
        syn.template get<QT>() = 0.0f;
    }
    template <class Syn>
    void update_synapse(Syn& syn, bool pre, bool post, float) const {
        if (plastic(syn.src(), syn.dst())) stdp_step<W, PT, QT>(syn, pre, post, stdp);
    }
    template <class From, class To, class Syn>
    void receive(From, To to, Syn syn) const {
        lif_receive<ACC>(to, syn.template get<W>(), scale_c);
    }
};

// A built benchmark: descriptor + parameterized model + the id range whose
// spikes enter rate measurements (stimulus populations are excluded).
template <class M>
struct model_build {
    network_desc desc;
    M model;
    uint32_t measure_begin = 0;
    uint32_t measure_end = 0;
    double scale_c = 1.0;
};

model_build<pingpong_model> build_pingpong(const param_set& ps);
model_build<vogels_model> build_vogels(uint32_t neurons, const param_set& ps);
model_build<brunel_model> build_brunel(uint32_t neurons, const param_set& ps);
model_build<brunel_plus_model> build_brunel_plus(uint32_t neurons, const param_set& ps);

// same models over a user-supplied descriptor (population counts must match
// the model's layout: 2 for pingpong/vogels, 3 for brunel/brunel+)
model_build<pingpong_model> build_pingpong_from_desc(const network_desc&, const param_set&);
model_build<vogels_model> build_vogels_from_desc(const network_desc&, const param_set&);
model_build<brunel_model> build_brunel_from_desc(const network_desc&, const param_set&);
model_build<brunel_plus_model> build_brunel_plus_from_desc(const network_desc&,
                                                           const param_set&);

// expected synapse count of a model instance at a given size
double expected_synapses(model_kind kind, uint32_t neurons, const param_set& ps);

// closest |N| whose expected synapse count matches the target
uint32_t solve_neurons(model_kind kind, uint64_t synapses, const param_set& ps);

} // namespace synq
