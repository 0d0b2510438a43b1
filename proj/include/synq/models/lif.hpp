#pragma once

#include <algorithm>
#include <cmath>

#include "synq/random.hpp"

namespace synq {

// Leaky integrate-and-fire building block over a (V, accumulated input,
// refractory countdown) field triple. Forward Euler; delivered weights are
// applied as instantaneous potential jumps on the next update.
struct lif_params {
    float tau_m = 20.0f;        // membrane time constant, ms
    float v_rest = 0.0f;        // mV
    float v_reset = 0.0f;       // mV
    float v_threshold = 1.0f;   // mV
    float refractory = 0.0f;    // ms; membrane held at v_reset while active
    float background = 0.0f;    // constant drive, mV per ms
};

// Ref must expose get<V>(), get<ACC>(), get<REF>() as float fields.
template <size_t V, size_t ACC, size_t REF, class Ref>
inline bool lif_update(Ref it, const lif_params& p, float dt) {
    float& refrac = it.template get<REF>();
    float& v = it.template get<V>();
    float& acc = it.template get<ACC>();
    if (refrac > 0.0f) {
        refrac -= dt;
        v = p.v_reset;
        acc = 0.0f;  // input arriving inside the refractory window is absorbed
        return false;
    }
    v += dt * (-(v - p.v_rest) / p.tau_m) + acc + dt * p.background;
    acc = 0.0f;
    if (v >= p.v_threshold) {
        v = p.v_reset;
        refrac = p.refractory;
        return true;
    }
    return false;
}

// accumulate a scaled weight into the target's input; goes through the
// engine's read-modify-write primitive so concurrent deliveries compose
template <size_t ACC, class Ref>
inline void lif_receive(Ref to, float weight, float c) {
    to.template add<ACC>(c * weight);
}

// spike with probability rate*dt; rate in spikes per ms
inline bool poisson_update(xorshift& rng, float p_spike) {
    return rng.uniform01() <= p_spike;
}

// Pair-based exponential-trace plasticity with hard weight clamping.
// Fields: <W> weight, <PT> pre trace, <QT> post trace. Traces decay every
// step; a presynaptic spike depresses by a_minus * post_trace, a
// postsynaptic spike potentiates by a_plus * pre_trace; trace increments
// happen after both reads.
struct stdp_params {
    float a_plus = 0.01f;
    float a_minus = 0.0105f;
    float tau_plus = 20.0f;   // ms
    float tau_minus = 20.0f;  // ms
    float w_min = 0.0f;
    float w_max = 1.0f;
    // derived per-step decay factors; call bind(dt) before use
    float decay_plus = 1.0f;
    float decay_minus = 1.0f;

    void bind(float dt) {
        decay_plus = std::exp(-dt / tau_plus);
        decay_minus = std::exp(-dt / tau_minus);
    }
};

template <size_t W, size_t PT, size_t QT, class Syn>
inline void stdp_step(Syn& syn, bool pre, bool post, const stdp_params& p) {
    float& w = syn.template get<W>();
    float& pt = syn.template get<PT>();
    float& qt = syn.template get<QT>();
    pt *= p.decay_plus;
    qt *= p.decay_minus;
    if (pre) w = std::clamp(w - p.a_minus * qt, p.w_min, p.w_max);
    if (post) w = std::clamp(w + p.a_plus * pt, p.w_min, p.w_max);
    if (pre) pt += 1.0f;
    if (post) qt += 1.0f;
}

} // namespace synq
