#include "synq/models/benchmarks.hpp"

#include <cmath>

namespace synq {

namespace {

lif_params lif_from(const param_set& ps, const std::string& prefix) {
    lif_params p;
    p.tau_m = static_cast<float>(param(ps, prefix + ".tau_m_ms"));
    p.v_rest = static_cast<float>(param(ps, prefix + ".v_rest_mv"));
    p.v_reset = static_cast<float>(param(ps, prefix + ".v_reset_mv"));
    p.v_threshold = static_cast<float>(param(ps, prefix + ".v_threshold_mv"));
    p.refractory = static_cast<float>(param(ps, prefix + ".refractory_ms"));
    p.background = static_cast<float>(param(ps, prefix + ".background_mv_per_ms"));
    if (!(p.tau_m > 0)) throw std::invalid_argument(prefix + ": tau_m must be > 0");
    if (!(p.v_threshold > p.v_reset))
        throw std::invalid_argument(prefix + ": v_threshold must exceed v_reset");
    return p;
}

uint32_t rounded(double x) { return static_cast<uint32_t>(std::llround(x)); }

double connection_p(const network_desc& desc, uint32_t src, uint32_t dst) {
    for (const auto& c : desc.connections)
        if (c.src == src && c.dst == dst) return c.p;
    return 0.0;
}

void expect_populations(const network_desc& desc, size_t n, const char* model) {
    if (desc.populations.size() != n)
        throw std::invalid_argument(std::string(model) + ": descriptor must declare " +
                                    std::to_string(n) + " populations, got " +
                                    std::to_string(desc.populations.size()));
}

} // namespace

model_build<pingpong_model> build_pingpong_from_desc(const network_desc& desc,
                                                     const param_set&) {
    expect_populations(desc, 2, "pingpong");
    model_build<pingpong_model> b;
    b.desc = desc;
    b.model.first_pop = desc.populations[0].size;
    b.measure_begin = 0;
    b.measure_end = desc.neuron_count();
    b.scale_c = 1.0;
    return b;
}

model_build<pingpong_model> build_pingpong(const param_set& ps) {
    network_desc desc;
    uint32_t pop = rounded(param(ps, "pingpong.population"));
    double p = param(ps, "pingpong.p");
    desc.populations = {{pop}, {pop}};
    desc.connections = {{0, 1, p}, {1, 0, p}};
    desc.dt = param(ps, "pingpong.dt_ms");
    desc.delay = rounded(param(ps, "pingpong.delay_steps"));
    return build_pingpong_from_desc(desc, ps);
}

model_build<vogels_model> build_vogels_from_desc(const network_desc& desc,
                                                 const param_set& ps) {
    expect_populations(desc, 2, "vogels");
    uint32_t neurons = desc.neuron_count();
    model_build<vogels_model> b;
    b.desc = desc;
    b.model.lif = lif_from(ps, "vogels");
    b.model.w_exc = static_cast<float>(param(ps, "vogels.w_exc_mv"));
    b.model.w_inh = static_cast<float>(param(ps, "vogels.w_inh_mv"));
    b.model.n_exc = desc.populations[0].size;
    b.model.v_init_lo = static_cast<float>(param(ps, "vogels.v_init_lo_mv"));
    b.model.v_init_hi = static_cast<float>(param(ps, "vogels.v_init_hi_mv"));
    b.scale_c = scaling_constant(model_kind::vogels, neurons);
    b.model.scale_c = static_cast<float>(b.scale_c);
    b.measure_begin = 0;
    b.measure_end = neurons;
    return b;
}

model_build<vogels_model> build_vogels(uint32_t neurons, const param_set& ps) {
    if (neurons < 10) throw std::invalid_argument("vogels: need at least 10 neurons to split");
    double fe = param(ps, "vogels.exc_fraction");
    uint32_t n_exc = rounded(fe * neurons);
    if (n_exc == 0 || n_exc >= neurons)
        throw std::invalid_argument("vogels: excitatory split leaves an empty population");
    uint32_t n_inh = neurons - n_exc;
    double p = param(ps, "vogels.p");
    network_desc desc;
    desc.populations = {{n_exc}, {n_inh}};
    desc.connections = {{0, 0, p}, {0, 1, p}, {1, 0, p}, {1, 1, p}};
    desc.dt = param(ps, "vogels.dt_ms");
    desc.delay = rounded(param(ps, "vogels.delay_steps"));
    return build_vogels_from_desc(desc, ps);
}

namespace {

// Stimulus rate from the external-drive ratio eta: each recurrent neuron
// receives C_p * rate_p external spikes/s; that is pinned to
// C_e * eta * rate_thr with rate_thr = theta / (J_eff * C_e * tau) and
// J_eff = c * J. The product c * C_e is size-invariant, so the drive is
// too, which is what lets Eq.-1 scaling hold the firing rate.
void fill_brunel_common(brunel_model& m, const network_desc& desc, const param_set& ps,
                        double& scale_out) {
    uint32_t n_exc = desc.populations[0].size;
    uint32_t n_inh = desc.populations[1].size;
    uint32_t n_stim = desc.populations[2].size;
    uint32_t neurons = desc.neuron_count();

    m.lif = lif_from(ps, "brunel");
    double j = param(ps, "brunel.j_mv");
    double g = param(ps, "brunel.g");
    m.j_exc = static_cast<float>(j);
    m.j_inh = static_cast<float>(-g * j);
    m.n_exc = n_exc;
    m.n_recurrent = n_exc + n_inh;
    m.v_init_hi = m.lif.v_threshold;

    scale_out = scaling_constant(model_kind::brunel, neurons);
    m.scale_c = static_cast<float>(scale_out);

    double eta = param(ps, "brunel.eta");
    double c_e = connection_p(desc, 0, 0) * n_exc;
    double c_p = connection_p(desc, 2, 0) * n_stim;
    if (c_e <= 0 || c_p <= 0)
        throw std::invalid_argument(
            "brunel: descriptor must connect populations 0->0 and 2->0");
    double theta = m.lif.v_threshold - m.lif.v_rest;
    double tau_s = m.lif.tau_m / 1000.0;
    double rate_thr_hz = theta / (j * scale_out * c_e * tau_s);
    double rate_p_hz = eta * rate_thr_hz * c_e / c_p;
    double p_spike = rate_p_hz / 1000.0 * desc.dt;  // spikes/ms times dt
    if (p_spike > 1.0)
        throw std::invalid_argument("brunel: stimulus rate*dt exceeds 1; lower eta or dt");
    m.p_spike = static_cast<float>(p_spike);
}

network_desc brunel_desc(uint32_t neurons, const param_set& ps) {
    if (neurons < 10) throw std::invalid_argument("brunel: need at least 10 neurons to split");
    double fe = param(ps, "brunel.exc_fraction");
    double fi = param(ps, "brunel.inh_fraction");
    uint32_t n_exc = rounded(fe * neurons);
    uint32_t n_inh = rounded(fi * neurons);
    if (n_exc == 0 || n_inh == 0 || n_exc + n_inh >= neurons)
        throw std::invalid_argument("brunel: split leaves an empty population");
    uint32_t n_stim = neurons - n_exc - n_inh;
    double p = param(ps, "brunel.p");
    network_desc desc;
    desc.populations = {{n_exc}, {n_inh}, {n_stim}};
    // the stimulus population projects onto the recurrent network and
    // receives nothing
    desc.connections = {{0, 0, p}, {0, 1, p}, {1, 0, p}, {1, 1, p}, {2, 0, p}, {2, 1, p}};
    desc.dt = param(ps, "brunel.dt_ms");
    desc.delay = rounded(param(ps, "brunel.delay_steps"));
    return desc;
}

} // namespace

model_build<brunel_model> build_brunel_from_desc(const network_desc& desc,
                                                 const param_set& ps) {
    expect_populations(desc, 3, "brunel");
    model_build<brunel_model> b;
    b.desc = desc;
    fill_brunel_common(b.model, b.desc, ps, b.scale_c);
    b.measure_begin = 0;
    b.measure_end = b.model.n_recurrent;  // stimulus spikes are not rate-measured
    return b;
}

model_build<brunel_model> build_brunel(uint32_t neurons, const param_set& ps) {
    return build_brunel_from_desc(brunel_desc(neurons, ps), ps);
}

model_build<brunel_plus_model> build_brunel_plus_from_desc(const network_desc& desc,
                                                           const param_set& ps) {
    expect_populations(desc, 3, "brunel+");
    model_build<brunel_plus_model> b;
    b.desc = desc;
    fill_brunel_common(b.model, b.desc, ps, b.scale_c);
    b.model.stdp.a_plus = static_cast<float>(param(ps, "stdp.a_plus"));
    b.model.stdp.a_minus = static_cast<float>(param(ps, "stdp.a_minus"));
    b.model.stdp.tau_plus = static_cast<float>(param(ps, "stdp.tau_plus_ms"));
    b.model.stdp.tau_minus = static_cast<float>(param(ps, "stdp.tau_minus_ms"));
    b.model.stdp.w_min = static_cast<float>(param(ps, "stdp.w_min_mv"));
    b.model.stdp.w_max = static_cast<float>(param(ps, "stdp.w_max_mv"));
    if (!(b.model.stdp.w_min < b.model.stdp.w_max))
        throw std::invalid_argument("stdp: need w_min < w_max");
    b.model.stdp.bind(static_cast<float>(b.desc.dt));
    b.measure_begin = 0;
    b.measure_end = b.model.n_recurrent;
    return b;
}

model_build<brunel_plus_model> build_brunel_plus(uint32_t neurons, const param_set& ps) {
    return build_brunel_plus_from_desc(brunel_desc(neurons, ps), ps);
}

double expected_synapses(model_kind kind, uint32_t neurons, const param_set& ps) {
    double n = neurons;
    switch (kind) {
        case model_kind::pingpong: {
            double pop = param(ps, "pingpong.population");
            return 2.0 * param(ps, "pingpong.p") * pop * pop;
        }
        case model_kind::vogels:
            return param(ps, "vogels.p") * n * n;
        case model_kind::brunel:
        case model_kind::brunel_plus: {
            double targets =
                param(ps, "brunel.exc_fraction") * n + param(ps, "brunel.inh_fraction") * n;
            return param(ps, "brunel.p") * n * targets;
        }
    }
    return 0.0;
}

uint32_t solve_neurons(model_kind kind, uint64_t synapses, const param_set& ps) {
    double target = static_cast<double>(synapses);
    double guess;
    switch (kind) {
        case model_kind::vogels:
            guess = std::sqrt(target / param(ps, "vogels.p"));
            break;
        case model_kind::brunel:
        case model_kind::brunel_plus: {
            double f = param(ps, "brunel.exc_fraction") + param(ps, "brunel.inh_fraction");
            guess = std::sqrt(target / (param(ps, "brunel.p") * f));
            break;
        }
        default:
            throw std::invalid_argument("solve_neurons: model '" +
                                        std::string(model_name(kind)) + "' has a fixed size");
    }
    uint32_t best = std::max<uint32_t>(10, rounded(guess));
    double best_err = std::abs(expected_synapses(kind, best, ps) - target);
    for (int64_t d = -2; d <= 2; ++d) {
        int64_t cand = static_cast<int64_t>(std::llround(guess)) + d;
        if (cand < 10) continue;
        double err = std::abs(expected_synapses(kind, static_cast<uint32_t>(cand), ps) - target);
        if (err < best_err) {
            best_err = err;
            best = static_cast<uint32_t>(cand);
        }
    }
    return best;
}

} // namespace synq
