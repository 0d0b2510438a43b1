#include "synq/network_desc.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace synq {

uint32_t network_desc::neuron_count() const {
    uint64_t total = 0;
    for (const auto& p : populations) total += p.size;
    return static_cast<uint32_t>(total);
}

std::pair<uint32_t, uint32_t> network_desc::id_range(size_t pop) const {
    if (pop >= populations.size())
        throw std::out_of_range("population index out of range");
    uint32_t first = 0;
    for (size_t i = 0; i < pop; ++i) first += populations[i].size;
    return {first, first + populations[pop].size};
}

std::vector<std::string> validate(const network_desc& desc) {
    std::vector<std::string> errors;
    auto err = [&](std::string msg) { errors.push_back(std::move(msg)); };

    for (size_t i = 0; i < desc.populations.size(); ++i)
        if (desc.populations[i].size == 0)
            err("population " + std::to_string(i) + " is empty; size must be >= 1");

    uint64_t total = 0;
    for (const auto& p : desc.populations) total += p.size;
    // the maximum id value is reserved as the adjacency sentinel
    if (total >= std::numeric_limits<uint32_t>::max())
        err("total neuron count " + std::to_string(total) + " exceeds the supported id space");

    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (size_t i = 0; i < desc.connections.size(); ++i) {
        const auto& c = desc.connections[i];
        std::string where = "connection " + std::to_string(i);
        if (c.src >= desc.populations.size())
            err(where + ": source population index " + std::to_string(c.src) + " is dangling");
        if (c.dst >= desc.populations.size())
            err(where + ": target population index " + std::to_string(c.dst) + " is dangling");
        if (!(c.p >= 0.0 && c.p <= 1.0))
            err(where + ": probability " + std::to_string(c.p) + " out of range [0, 1]");
        if (!seen.insert({c.src, c.dst}).second)
            err(where + ": duplicate (src, dst) pair " + std::to_string(c.src) + " -> " +
                std::to_string(c.dst));
    }

    if (desc.delay < 1) err("delay must be >= 1 timestep");
    if (!(desc.dt > 0.0)) err("dt must be > 0");

    return errors;
}

void validate_or_throw(const network_desc& desc) {
    auto errors = validate(desc);
    if (errors.empty()) return;
    std::string joined = "invalid network description:";
    for (const auto& e : errors) joined += "\n  - " + e;
    throw std::invalid_argument(joined);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

network_desc parse_desc(std::istream& in) {
    network_desc desc;
    std::string line;
    size_t lineno = 0;
    bool saw_populations = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("descriptor line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "populations") {
            saw_populations = true;
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) continue;
                desc.populations.push_back({static_cast<uint32_t>(std::stoul(tok))});
            }
        } else if (key == "connection") {
            std::stringstream ss(value);
            connectivity_spec c;
            if (!(ss >> c.src >> c.dst >> c.p))
                throw std::invalid_argument("descriptor line " + std::to_string(lineno) +
                                            ": expected 'connection = src dst p'");
            desc.connections.push_back(c);
        } else if (key == "dt") {
            desc.dt = std::stod(value);
        } else if (key == "delay") {
            desc.delay = static_cast<uint32_t>(std::stoul(value));
        } else {
            throw std::invalid_argument("descriptor line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (!saw_populations)
        throw std::invalid_argument("descriptor: missing 'populations' entry");
    return desc;
}

network_desc load_desc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open descriptor file: " + path);
    return parse_desc(in);
}

void write_desc(std::ostream& out, const network_desc& desc) {
    out << "populations = ";
    for (size_t i = 0; i < desc.populations.size(); ++i)
        out << (i ? ", " : "") << desc.populations[i].size;
    out << "\n";
    for (const auto& c : desc.connections)
        out << "connection = " << c.src << " " << c.dst << " " << c.p << "\n";
    out << "dt = " << desc.dt << "\n";
    out << "delay = " << desc.delay << "\n";
}

} // namespace synq
