#include <doctest.h>

#include <sstream>

#include "synq/network_desc.hpp"
#include "synq/random.hpp"

using namespace synq;

namespace {

network_desc ping_pong_desc() {
    network_desc d;
    d.populations = {{100}, {100}};
    d.connections = {{0, 1, 0.01}, {1, 0, 0.01}};
    d.dt = 1.0;
    d.delay = 1;
    return d;
}

} // namespace

TEST_CASE("a well-formed descriptor validates cleanly") {
    auto d = ping_pong_desc();
    CHECK(validate(d).empty());
    CHECK(d.neuron_count() == 200);
}

TEST_CASE("validation reports every violation at once") {
    network_desc d;
    d.populations = {{0}, {10}};
    d.connections = {{0, 1, 1.5}, {0, 5, 0.1}, {0, 1, 0.2}};
    d.dt = 0.0;
    d.delay = 0;
    auto errors = validate(d);
    CHECK(errors.size() == 6);  // empty pop, p range, dangling, duplicate, delay, dt
}

TEST_CASE("delay zero is rejected") {
    auto d = ping_pong_desc();
    d.delay = 0;
    auto errors = validate(d);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].find("delay") != std::string::npos);
}

TEST_CASE("probability out of range is rejected") {
    auto d = ping_pong_desc();
    d.connections[0].p = 1.5;
    auto errors = validate(d);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].find("probability") != std::string::npos);
}

TEST_CASE("validation is idempotent") {
    auto d = ping_pong_desc();
    REQUIRE(validate(d).empty());
    auto copy = d;
    REQUIRE(validate(d).empty());
    CHECK(copy.populations.size() == d.populations.size());
    CHECK(copy.dt == d.dt);
}

TEST_CASE("id ranges are contiguous population by population") {
    network_desc d;
    d.populations = {{100}, {100}};
    CHECK(d.id_range(0) == std::pair<uint32_t, uint32_t>{0, 100});
    CHECK(d.id_range(1) == std::pair<uint32_t, uint32_t>{100, 200});

    network_desc single;
    single.populations = {{4000}};
    CHECK(single.id_range(0) == std::pair<uint32_t, uint32_t>{0, 4000});

    CHECK_THROWS(d.id_range(2));
}

TEST_CASE("id ranges tile [0, N) for random descriptors") {
    xorshift rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        network_desc d;
        size_t pops = 1 + rng() % 6;
        for (size_t i = 0; i < pops; ++i) d.populations.push_back({1 + rng() % 1000});
        uint32_t cursor = 0;
        for (size_t i = 0; i < pops; ++i) {
            auto [lo, hi] = d.id_range(i);
            CHECK(lo == cursor);
            CHECK(hi > lo);
            cursor = hi;
        }
        CHECK(cursor == d.neuron_count());
    }
}

TEST_CASE("descriptor round-trips through the text format") {
    auto d = ping_pong_desc();
    std::stringstream ss;
    write_desc(ss, d);
    auto back = parse_desc(ss);
    CHECK(back.populations.size() == 2);
    CHECK(back.populations[1].size == 100);
    REQUIRE(back.connections.size() == 2);
    CHECK(back.connections[0].src == 0);
    CHECK(back.connections[0].dst == 1);
    CHECK(back.connections[0].p == doctest::Approx(0.01));
    CHECK(back.dt == doctest::Approx(1.0));
    CHECK(back.delay == 1);
}

TEST_CASE("descriptor parser rejects malformed input") {
    std::stringstream no_pops("dt = 1\n");
    CHECK_THROWS(parse_desc(no_pops));
    std::stringstream bad_key("populations = 10\nwat = 7\n");
    CHECK_THROWS(parse_desc(bad_key));
    std::stringstream bad_conn("populations = 10\nconnection = 0\n");
    CHECK_THROWS(parse_desc(bad_conn));
}
