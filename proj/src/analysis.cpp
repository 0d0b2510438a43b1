#include "synq/analysis.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace synq {

model_kind parse_model(const std::string& name) {
    if (name == "pingpong") return model_kind::pingpong;
    if (name == "vogels") return model_kind::vogels;
    if (name == "brunel") return model_kind::brunel;
    if (name == "brunel+" || name == "brunel_plus") return model_kind::brunel_plus;
    throw std::invalid_argument("unknown model '" + name +
                                "' (expected pingpong, vogels, brunel or brunel+)");
}

const char* model_name(model_kind kind) {
    switch (kind) {
        case model_kind::pingpong: return "pingpong";
        case model_kind::vogels: return "vogels";
        case model_kind::brunel: return "brunel";
        case model_kind::brunel_plus: return "brunel+";
    }
    return "?";
}

double scaling_constant(model_kind kind, uint64_t neurons) {
    if (neurons == 0) throw std::invalid_argument("scaling_constant: neuron count must be > 0");
    double n = static_cast<double>(neurons);
    switch (kind) {
        case model_kind::vogels: return 16000000.0 / (n * n);
        case model_kind::brunel:
        case model_kind::brunel_plus: return 20000.0 / n;
        default:
            throw std::invalid_argument("scaling_constant: no scaling rule for model '" +
                                        std::string(model_name(kind)) + "'");
    }
}

double firing_rate(uint64_t spike_count, uint64_t neurons, int64_t steps) {
    if (steps <= 0) throw std::invalid_argument("firing_rate: steps must be > 0");
    if (neurons == 0) return 0.0;
    return static_cast<double>(spike_count) /
           (static_cast<double>(neurons) * static_cast<double>(steps));
}

double firing_rate(const spike_raster& raster, uint64_t neurons, int64_t steps) {
    return firing_rate(raster.records.size(), neurons, steps);
}

bool rate_retention(model_kind kind, double rate_at_size, double rate_at_original) {
    double lo, hi;
    switch (kind) {
        case model_kind::vogels:
            lo = 0.5;
            hi = 2.0;
            break;
        case model_kind::brunel:
        case model_kind::brunel_plus:
            lo = 0.8;
            hi = 1.25;
            break;
        default:
            throw std::invalid_argument("rate_retention: no band for model '" +
                                        std::string(model_name(kind)) + "'");
    }
    return rate_at_size >= lo * rate_at_original && rate_at_size <= hi * rate_at_original;
}

memory_breakdown memory_estimate(model_kind kind) {
    // canonical accounting at each benchmark's standard timestep/delay:
    // vogels dt 0.1ms delay 0.8ms (8 frames), brunel(+) dt 0.1ms delay
    // 1.5ms (15 frames); plasticity adds 50 history bits, one age and one
    // expiration-queue slot per neuron and 12B synapse state
    memory_breakdown m;
    switch (kind) {
        case model_kind::vogels:
            m.neuron_fields = 16;
            m.neuron_spikes = 8 * 4;
            m.synapse_adjacency = 4;
            break;
        case model_kind::brunel:
            m.neuron_fields = 8;
            m.neuron_spikes = 15 * 4;
            m.synapse_adjacency = 4;
            break;
        case model_kind::brunel_plus:
            m.neuron_fields = 8;
            m.neuron_spikes = 15 * 4;
            m.neuron_bitmasks = 50.0 / 8.0;
            m.neuron_ages = 4;
            m.neuron_expirations = 4;
            m.synapse_adjacency = 4;
            m.synapse_fields = 12;
            break;
        default:
            throw std::invalid_argument("memory_estimate: no accounting for model '" +
                                        std::string(model_name(kind)) + "'");
    }
    return m;
}

void write_raster(std::ostream& out, const spike_raster& raster) {
    out << "# dt=" << raster.dt << " N=" << raster.neurons << "\n";
    for (const auto& r : raster.records) out << r.step << "\t" << r.neuron << "\n";
}

void write_raster_file(const std::string& path, const spike_raster& raster) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open raster file for writing: " + path);
    write_raster(out, raster);
    out.flush();
    if (!out) throw std::runtime_error("failed writing raster file: " + path);
}

spike_raster read_raster(std::istream& in) {
    spike_raster raster;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# dt=", 0) != 0)
        throw std::runtime_error("raster: missing '# dt=<ms> N=<count>' header");
    {
        std::stringstream ss(line.substr(5));
        std::string ntok;
        ss >> raster.dt >> ntok;
        if (ntok.rfind("N=", 0) != 0) throw std::runtime_error("raster: malformed header");
        raster.neurons = static_cast<uint32_t>(std::stoul(ntok.substr(2)));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        spike_record r{};
        if (!(ss >> r.step >> r.neuron)) throw std::runtime_error("raster: malformed record");
        raster.records.push_back(r);
    }
    return raster;
}

spike_raster read_raster_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open raster file: " + path);
    return read_raster(in);
}

} // namespace synq
