#include "synq/adjacency.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "synq/thread_pool.hpp"

namespace synq {

adjacency_list::adjacency_list(uint32_t neurons, uint32_t deg_max, uint32_t row_pitch)
    : neurons_(neurons), deg_max_(deg_max), pitch_(row_pitch) {
    cells_.assign(static_cast<size_t>(neurons_) * pitch_, sentinel);
    degree_.assign(neurons_, 0);
}

std::span<const uint32_t> adjacency_list::row(uint32_t id) const {
    if (id >= neurons_) throw std::out_of_range("adjacency row id out of range");
    return {cells_.data() + static_cast<size_t>(id) * pitch_, degree_[id]};
}

std::span<const uint32_t> adjacency_list::raw_row(uint32_t id) const {
    if (id >= neurons_) throw std::out_of_range("adjacency row id out of range");
    return {cells_.data() + static_cast<size_t>(id) * pitch_, pitch_};
}

construction_plan plan_jobs(const network_desc& desc, uint64_t seed, uint32_t pitch_align) {
    construction_plan plan;
    const uint32_t n_total = desc.neuron_count();
    plan.out_degree.assign(n_total, 0);

    // degree sampling is sequential on the master stream; expansion later
    // reseeds per job, so the two phases stay independent
    xorshift rng(derive_seed(seed, 0));

    // jobs grouped per source neuron so offsets can tile rows in one pass
    std::vector<std::pair<uint32_t, uint32_t>> ranges;  // per connection: target [a, b)
    ranges.reserve(desc.connections.size());
    for (const auto& c : desc.connections) ranges.push_back(desc.id_range(c.dst));

    std::vector<std::vector<construction_job>> per_src(n_total);
    for (size_t ci = 0; ci < desc.connections.size(); ++ci) {
        const auto& c = desc.connections[ci];
        auto [sa, sb] = desc.id_range(c.src);
        auto [ta, tb] = ranges[ci];
        const uint32_t span = tb - ta;
        for (uint32_t s = sa; s < sb; ++s) {
            uint32_t n = binomial(span, c.p, rng);
            plan.out_degree[s] += n;
            per_src[s].push_back({n, ta, tb, 0});
        }
    }

    for (uint32_t i = 0; i < n_total; ++i)
        plan.deg_max = std::max(plan.deg_max, plan.out_degree[i]);
    if (pitch_align == 0) pitch_align = 1;
    plan.row_pitch = (plan.deg_max + pitch_align - 1) / pitch_align * pitch_align;

    for (uint32_t s = 0; s < n_total; ++s) {
        uint64_t o = static_cast<uint64_t>(s) * plan.row_pitch;
        for (auto& job : per_src[s]) {
            job.o = o;
            o += job.n;
            plan.total_edges += job.n;
            plan.jobs.push_back(job);
        }
    }
    return plan;
}

adjacency_list expand_jobs(const construction_plan& plan, uint32_t neurons, uint64_t seed,
                           thread_pool* pool) {
    adjacency_list adj(neurons, plan.deg_max, plan.row_pitch);
    adj.degree_ = plan.out_degree;
    adj.degree_.resize(neurons, 0);
    adj.edges_ = plan.total_edges;

    auto expand_range = [&](uint64_t jb, uint64_t je) {
        for (uint64_t j = jb; j < je; ++j) {
            const auto& job = plan.jobs[j];
            if (job.n == 0) continue;
            xorshift jrng(derive_seed(seed, j + 1));
            sorted_random(job.n, job.a, job.b, jrng, adj.cells_.data() + job.o);
        }
    };
    auto sort_range = [&](uint64_t rb, uint64_t re) {
        for (uint64_t r = rb; r < re; ++r) {
            uint32_t* begin = adj.cells_.data() + r * plan.row_pitch;
            std::sort(begin, begin + adj.degree_[r]);
        }
    };

    if (pool) {
        pool->parallel_for(0, plan.jobs.size(), 256, expand_range);
        pool->parallel_for(0, neurons, 1024, sort_range);
    } else {
        expand_range(0, plan.jobs.size());
        sort_range(0, neurons);
    }
    return adj;
}

adjacency_list build_adjacency(const network_desc& desc, uint64_t seed, uint32_t pitch_align,
                               thread_pool* pool) {
    auto plan = plan_jobs(desc, seed, pitch_align);
    return expand_jobs(plan, desc.neuron_count(), seed, pool);
}

namespace {
template <class T> void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T> T take(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
} // namespace

void adjacency_list::dump(std::ostream& out) const {
    put<uint32_t>(out, neurons_);
    put<uint32_t>(out, pitch_);
    put<uint32_t>(out, deg_max_);
    put<uint32_t>(out, sentinel);
    out.write(reinterpret_cast<const char*>(cells_.data()),
              static_cast<std::streamsize>(cells_.size() * sizeof(uint32_t)));
}

adjacency_list adjacency_list::load(std::istream& in) {
    uint32_t neurons = take<uint32_t>(in);
    uint32_t pitch = take<uint32_t>(in);
    uint32_t degmax = take<uint32_t>(in);
    uint32_t sent = take<uint32_t>(in);
    if (!in || sent != sentinel) throw std::runtime_error("adjacency load: bad header");
    adjacency_list adj(neurons, degmax, pitch);
    in.read(reinterpret_cast<char*>(adj.cells_.data()),
            static_cast<std::streamsize>(adj.cells_.size() * sizeof(uint32_t)));
    if (!in) throw std::runtime_error("adjacency load: truncated data");
    uint64_t edges = 0;
    for (uint32_t r = 0; r < neurons; ++r) {
        auto raw = adj.raw_row(r);
        uint32_t d = 0;
        while (d < pitch && raw[d] != sentinel) ++d;
        adj.degree_[r] = d;
        edges += d;
    }
    adj.edges_ = edges;
    return adj;
}

void adjacency_list::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    dump(out);
}

adjacency_list adjacency_list::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load(in);
}

} // namespace synq
