#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "synq/network_desc.hpp"
#include "synq/random.hpp"

namespace synq {

class thread_pool;

// "Write n sorted, uniformly distributed random integers from [a, b) into
// the row storage starting at offset o."
struct construction_job {
    uint32_t n = 0;
    uint32_t a = 0;
    uint32_t b = 0;
    uint64_t o = 0;
};

// Optional capture of the generator's intermediate rows, matching the
// documented worked example of the algorithm.
struct sorted_random_trace {
    std::vector<double> draws;       // n+2 uniforms in (0, 1]
    std::vector<double> exponentials;
    std::vector<double> prefix;      // running sum starting at 0
    std::vector<double> normalized;  // prefix / prefix.back()
    std::vector<int64_t> scaled;     // round(normalized * (b - a - n))
    std::vector<uint32_t> out;
};

// n strictly increasing, duplicate-free integers in [a, b), written to out.
// Draws exactly n + 2 uniforms from rng: the first and last act as
// sentinels so the endpoints a and b-1 are reachable but not forced.
// Pipeline: -ln -> running sum (starting at 0) -> divide by final sum ->
// scale by (b - a - n), round half up -> add consecutive offsets 0..n-1 ->
// add a. Requires n <= b - a. Rng needs uniform01() in (0, 1].
template <class Rng>
void sorted_random(uint32_t n, uint32_t a, uint32_t b, Rng& rng, uint32_t* out,
                   sorted_random_trace* trace = nullptr);

struct construction_plan {
    std::vector<construction_job> jobs;
    std::vector<uint32_t> out_degree;  // per neuron, summed over all jobs
    uint32_t deg_max = 0;
    uint32_t row_pitch = 0;  // deg_max rounded up to the pitch alignment
    uint64_t total_edges = 0;
};

// Padded, row-sorted neighbor table. Each row holds a neuron's out-going
// targets sorted ascending, padded to row_pitch with the sentinel (the
// maximum representable id, which no valid neuron can use and which sorts
// last). Fixed pitch keeps index arithmetic trivial; no offset table.
class adjacency_list {
public:
    static constexpr uint32_t sentinel = 0xffffffffu;

    adjacency_list() = default;
    adjacency_list(uint32_t neurons, uint32_t deg_max, uint32_t row_pitch);

    uint32_t neuron_count() const { return neurons_; }
    uint32_t deg_max() const { return deg_max_; }
    uint32_t row_pitch() const { return pitch_; }
    uint64_t edge_count() const { return edges_; }
    uint64_t bytes() const { return cells_.size() * sizeof(uint32_t) + degree_.size() * sizeof(uint32_t); }

    uint32_t out_degree(uint32_t id) const { return degree_[id]; }

    // sorted valid prefix of the row; sentinels excluded
    std::span<const uint32_t> row(uint32_t id) const;

    // raw row storage including sentinel padding (for dumps and checks)
    std::span<const uint32_t> raw_row(uint32_t id) const;

    void dump(std::ostream& out) const;
    static adjacency_list load(std::istream& in);
    void save_file(const std::string& path) const;
    static adjacency_list load_file(const std::string& path);

    friend adjacency_list expand_jobs(const construction_plan&, uint32_t, uint64_t, thread_pool*);

private:
    uint32_t neurons_ = 0;
    uint32_t deg_max_ = 0;
    uint32_t pitch_ = 0;
    uint64_t edges_ = 0;
    std::vector<uint32_t> cells_;   // neurons_ * pitch_
    std::vector<uint32_t> degree_;  // neurons_
};

// One job per (source neuron, connectivity entry): n is drawn
// Binomial(b - a, p), offsets tile each source's row segment by segment.
// Deterministic for a fixed seed.
construction_plan plan_jobs(const network_desc& desc, uint64_t seed, uint32_t pitch_align = 32);

// Expands every job at its offset (parallel over jobs when a pool is given;
// results are independent of scheduling because each job reseeds from the
// master seed and its index), then sorts each complete row.
adjacency_list expand_jobs(const construction_plan& plan, uint32_t neurons, uint64_t seed,
                           thread_pool* pool = nullptr);

// plan + expand with the same master seed
adjacency_list build_adjacency(const network_desc& desc, uint64_t seed,
                               uint32_t pitch_align = 32, thread_pool* pool = nullptr);

template <class Rng>
void sorted_random(uint32_t n, uint32_t a, uint32_t b, Rng& rng, uint32_t* out,
                   sorted_random_trace* trace) {
    if (b <= a) throw std::invalid_argument("sorted_random: empty interval");
    const uint32_t span = b - a;
    if (n > span) throw std::invalid_argument("sorted_random: n exceeds interval size");

    thread_local std::vector<double> pos;
    pos.resize(n + 2);

    if (trace) {
        trace->draws.resize(n + 2);
        trace->exponentials.resize(n + 2);
    }
    for (uint32_t i = 0; i < n + 2; ++i) {
        double u = rng.uniform01();
        if (trace) {
            trace->draws[i] = u;
            trace->exponentials[i] = -std::log(u);
        }
        pos[i] = u;
    }

    // exclusive running sum: element i holds the total of the exponentials
    // before it, so the first sentinel sits at 0 and the last at the sum of
    // all but the final (padding) draw
    double sum = 0.0;
    for (uint32_t i = 0; i < n + 2; ++i) {
        double e = -std::log(pos[i]);
        pos[i] = sum;
        sum += e;
    }
    if (trace) trace->prefix.assign(pos.begin(), pos.end());

    double total = pos[n + 1];
    if (total <= 0.0) total = 1.0;  // every draw was exactly 1; degenerate but defined
    const double scale = static_cast<double>(span - n);
    if (trace) {
        trace->normalized.resize(n + 2);
        trace->scaled.resize(n + 2);
        for (uint32_t i = 0; i < n + 2; ++i) {
            trace->normalized[i] = pos[i] / total;
            trace->scaled[i] = static_cast<int64_t>(std::floor(pos[i] / total * scale + 0.5));
        }
    }

    for (uint32_t i = 0; i < n; ++i) {
        double v = pos[i + 1] / total * scale;
        out[i] = a + static_cast<uint32_t>(std::floor(v + 0.5)) + i;
    }
    if (trace) trace->out.assign(out, out + n);
}

} // namespace synq
