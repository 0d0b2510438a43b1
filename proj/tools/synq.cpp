// synq command line front end: build a benchmark network, simulate it,
// record rasters and stats, or sweep network sizes. Talks to the engine
// exclusively through the C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "synq/synq.h"

namespace {

struct opts_deleter {
    void operator()(synq_opts* o) const { synq_opts_free(o); }
};
struct sim_deleter {
    void operator()(synq_sim* s) const { synq_sim_free(s); }
};
using opts_ptr = std::unique_ptr<synq_opts, opts_deleter>;
using sim_ptr = std::unique_ptr<synq_sim, sim_deleter>;

[[noreturn]] void fail(const std::string& what) {
    std::cerr << "synq: error: " << what << "\n";
    std::exit(1);
}

void check(synq_status st, const std::string& what) {
    if (st != SYNQ_OK)
        fail(what + ": " + synq_status_name(st) + " (" + synq_last_error() + ")");
}

std::vector<uint64_t> parse_sizes(const std::string& sweep) {
    std::vector<uint64_t> sizes;
    std::stringstream ss(sweep);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        double v = 0;
        try {
            v = std::stod(tok);
        } catch (const std::exception&) {
            fail("bad sweep size '" + tok + "'");
        }
        if (v < 1) fail("sweep sizes must be >= 1 synapse");
        sizes.push_back(static_cast<uint64_t>(std::llround(v)));
    }
    return sizes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clock-driven spiking neural network benchmark runner"};
    app.set_version_flag("--version", synq_version());

    std::string model;
    uint64_t neurons = 0;
    double synapses = 0;
    double duration_s = 10.0;
    double dt_ms = 0;
    uint32_t delay = 0;
    uint64_t seed = 1;
    uint32_t threads = 0;
    bool deterministic = false;
    std::string raster_path, stats_path, net_path, defaults_path, sweep, out_path;
    std::vector<std::string> params;

    app.add_option("--model", model, "pingpong, vogels, brunel or brunel+")->required();
    app.add_option("--neurons", neurons, "network size in neurons");
    app.add_option("--synapses", synapses, "network size as an expected synapse count");
    app.add_option("--duration", duration_s, "simulated seconds (default 10)");
    app.add_option("--dt", dt_ms, "timestep override, simulated ms");
    app.add_option("--delay", delay, "synaptic delay override, whole timesteps");
    app.add_option("--seed", seed, "master seed (default 1)");
    app.add_option("--threads", threads, "worker threads, 0 = hardware");
    app.add_flag("--deterministic", deterministic,
                 "sequential stage execution in ascending id order");
    app.add_option("--raster", raster_path, "write the spike raster to this file");
    app.add_option("--stats", stats_path, "write the run summary here (default stdout)");
    app.add_option("--param", params, "model parameter override KEY=VALUE (repeatable)");
    app.add_option("--defaults", defaults_path, "parameter file merged over built-ins");
    app.add_option("--net", net_path, "network descriptor file (overrides --neurons)");
    app.add_option("--sweep", sweep,
                   "comma-separated synapse counts; emits one CSV row per size");
    app.add_option("--out", out_path, "sweep CSV destination (default stdout)");

    CLI11_PARSE(app, argc, argv);

    const bool sweeping = !sweep.empty();
    if (neurons && synapses) fail("give either --neurons or --synapses, not both");
    if (sweeping && (neurons || synapses || !net_path.empty() || !raster_path.empty()))
        fail("--sweep cannot be combined with --neurons/--synapses/--net/--raster");
    if (!sweeping && model != "pingpong" && !neurons && !synapses && net_path.empty())
        fail("model '" + model + "' needs --neurons, --synapses or --net");
    if (!(duration_s > 0)) fail("--duration must be > 0");

    opts_ptr opts(synq_opts_new());
    if (!opts) fail("out of memory");
    check(synq_opts_seed(opts.get(), seed), "seed");
    check(synq_opts_threads(opts.get(), threads), "threads");
    check(synq_opts_deterministic(opts.get(), deterministic ? 1 : 0), "deterministic");
    if (!defaults_path.empty())
        check(synq_opts_defaults_file(opts.get(), defaults_path.c_str()), "defaults file");
    for (const auto& kv : params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) fail("bad --param '" + kv + "'");
        double value = 0;
        try {
            value = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            fail("bad --param value in '" + kv + "'");
        }
        check(synq_opts_param(opts.get(), kv.substr(0, eq).c_str(), value), "param");
    }
    if (dt_ms > 0) check(synq_opts_dt(opts.get(), dt_ms), "dt");
    if (delay > 0) check(synq_opts_delay(opts.get(), delay), "delay");
    if (!raster_path.empty()) check(synq_opts_record(opts.get(), 1), "record");

    if (sweeping) {
        auto sizes = parse_sizes(sweep);
        if (sizes.size() < 2) fail("--sweep needs at least two sizes");

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) fail("cannot open sweep output: " + out_path);
            out = &file;
        }
        *out << "synapses,setup_s,sim_s,bytes\n";
        out->flush();

        for (uint64_t size : sizes) {
            synq_sim* raw = nullptr;
            auto st = synq_sim_new_for_synapses(model.c_str(), size, opts.get(), &raw);
            if (st != SYNQ_OK)
                fail("sweep size " + std::to_string(size) + ": " + synq_last_error());
            sim_ptr sim(raw);
            int64_t steps =
                static_cast<int64_t>(std::llround(duration_s * 1000.0 / synq_sim_dt(raw)));
            if (synq_sim_run(raw, steps) != SYNQ_OK || synq_sim_flush(raw) != SYNQ_OK)
                fail("sweep size " + std::to_string(size) + ": " + synq_last_error());
            double setup = synq_sim_seconds(raw, SYNQ_PHASE_CONSTRUCT) +
                           synq_sim_seconds(raw, SYNQ_PHASE_INIT_NEURONS) +
                           synq_sim_seconds(raw, SYNQ_PHASE_INIT_SYNAPSES);
            synq_memory mem{};
            check(synq_memory_estimate(model.c_str(), synq_sim_neurons(raw),
                                       synq_sim_synapses(raw), &mem),
                  "memory estimate");
            *out << synq_sim_synapses(raw) << "," << setup << ","
                 << synq_sim_seconds(raw, SYNQ_PHASE_SIMULATE) << ","
                 << static_cast<uint64_t>(mem.total_bytes) << "\n";
            out->flush();
            if (!*out) fail("failed writing sweep output");
        }
        return 0;
    }

    synq_sim* raw = nullptr;
    synq_status st;
    if (!net_path.empty())
        st = synq_sim_new_from_file(model.c_str(), net_path.c_str(), opts.get(), &raw);
    else if (synapses > 0)
        st = synq_sim_new_for_synapses(model.c_str(),
                                       static_cast<uint64_t>(std::llround(synapses)),
                                       opts.get(), &raw);
    else
        st = synq_sim_new(model.c_str(), static_cast<uint32_t>(neurons), opts.get(), &raw);
    check(st, "building '" + model + "'");
    sim_ptr sim(raw);

    int64_t steps = static_cast<int64_t>(std::llround(duration_s * 1000.0 / synq_sim_dt(raw)));
    check(synq_sim_run(raw, steps), "simulation");
    check(synq_sim_flush(raw), "flush");

    if (!raster_path.empty())
        check(synq_sim_write_raster(raw, raster_path.c_str()), "raster");
    check(synq_sim_write_stats(raw, stats_path.empty() ? nullptr : stats_path.c_str()),
          "stats");
    return 0;
}
