#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace synq {

struct population_spec {
    uint32_t size = 0;
};

struct connectivity_spec {
    uint32_t src = 0;
    uint32_t dst = 0;
    double p = 0.0;
};

// Declarative description of a network instance: population sizes,
// pairwise connection probabilities, timestep (simulated ms) and the
// global synaptic delay in whole timesteps. Immutable after validation.
//
// Global neuron ids are assigned contiguously population by population in
// declaration order.
struct network_desc {
    std::vector<population_spec> populations;
    std::vector<connectivity_spec> connections;
    double dt = 1.0;     // simulated milliseconds per step
    uint32_t delay = 1;  // whole timesteps, >= 1

    uint32_t neuron_count() const;

    // half-open global-id interval [first, last+1) of a population
    std::pair<uint32_t, uint32_t> id_range(size_t pop) const;
};

// Returns one message per violated invariant; empty means valid.
std::vector<std::string> validate(const network_desc& desc);

// Throws std::invalid_argument listing every violation.
void validate_or_throw(const network_desc& desc);

// Line-oriented key/value format:
//   populations = 100, 100
//   connection  = 0 1 0.01     (src dst probability; repeatable)
//   dt          = 1.0
//   delay       = 1
// '#' starts a comment.
network_desc parse_desc(std::istream& in);
network_desc load_desc(const std::string& path);
void write_desc(std::ostream& out, const network_desc& desc);

} // namespace synq
