#include "synq/params.hpp"

#include <fstream>
#include <stdexcept>

namespace synq {

param_set builtin_defaults() {
    // keep in sync with configs/model_defaults.cfg (asserted by tests)
    return {
        {"measure.warmup_ms", 500.0},
        {"measure.exclude_stimulus", 1.0},

        {"pingpong.population", 100.0},
        {"pingpong.p", 0.01},
        {"pingpong.dt_ms", 1.0},
        {"pingpong.delay_steps", 1.0},

        {"vogels.dt_ms", 0.1},
        {"vogels.delay_steps", 8.0},
        {"vogels.p", 0.02},
        {"vogels.exc_fraction", 0.8},
        {"vogels.tau_m_ms", 20.0},
        {"vogels.v_rest_mv", -49.0},
        {"vogels.v_reset_mv", -60.0},
        {"vogels.v_threshold_mv", -50.0},
        {"vogels.refractory_ms", 5.0},
        {"vogels.background_mv_per_ms", 0.0},
        {"vogels.w_exc_mv", 0.4},
        {"vogels.w_inh_mv", -2.2},
        {"vogels.v_init_lo_mv", -60.0},
        {"vogels.v_init_hi_mv", -50.0},

        {"brunel.dt_ms", 0.1},
        {"brunel.delay_steps", 15.0},
        {"brunel.p", 0.1},
        {"brunel.exc_fraction", 0.4},
        {"brunel.inh_fraction", 0.1},
        {"brunel.tau_m_ms", 20.0},
        {"brunel.v_rest_mv", 0.0},
        {"brunel.v_reset_mv", 10.0},
        {"brunel.v_threshold_mv", 20.0},
        {"brunel.refractory_ms", 2.0},
        {"brunel.background_mv_per_ms", 0.0},
        {"brunel.j_mv", 0.1},
        {"brunel.g", 5.0},
        {"brunel.eta", 2.0},

        {"stdp.a_plus", 0.01},
        {"stdp.a_minus", 0.0105},
        {"stdp.tau_plus_ms", 20.0},
        {"stdp.tau_minus_ms", 20.0},
        {"stdp.w_min_mv", 0.0},
        {"stdp.w_max_mv", 0.3},
    };
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

void merge_params_file(param_set& base, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter file: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            base[key] = std::stod(value);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": not a number: '" + value + "'");
        }
    }
}

void merge_param_kv(param_set& base, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("expected KEY=VALUE, got '" + kv + "'");
    std::string key = trim(kv.substr(0, eq));
    std::string value = trim(kv.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("empty parameter key in '" + kv + "'");
    try {
        base[key] = std::stod(value);
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter value is not a number: '" + kv + "'");
    }
}

double param(const param_set& ps, const std::string& key) {
    auto it = ps.find(key);
    if (it == ps.end()) throw std::invalid_argument("missing parameter: " + key);
    return it->second;
}

} // namespace synq
