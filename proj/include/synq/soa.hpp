#pragma once

#include <atomic>
#include <cstdint>
#include <tuple>
#include <vector>

#include "synq/random.hpp"

namespace synq {

// Field layout declaration: one array per field (structure of arrays).
template <class... Ts>
struct fields {
    static constexpr size_t count = sizeof...(Ts);
};

template <class FieldList>
class soa_store;

template <class... Ts>
class soa_store<fields<Ts...>> {
public:
    using field_list = fields<Ts...>;

    void resize(size_t n) {
        std::apply([n](auto&... arr) { (arr.assign(n, {}), ...); }, arrays_);
        size_ = n;
    }
    size_t size() const { return size_; }

    template <size_t I>
    auto* data() {
        return std::get<I>(arrays_).data();
    }
    template <size_t I>
    const auto* data() const {
        return std::get<I>(arrays_).data();
    }

    uint64_t bytes() const {
        uint64_t b = 0;
        std::apply([&](const auto&... arr) { ((b += arr.size() * sizeof(arr[0])), ...); },
                   arrays_);
        return b;
    }

private:
    std::tuple<std::vector<Ts>...> arrays_;
    size_t size_ = 0;
};

namespace detail {

template <class T>
void atomic_store_relaxed(T& x, T v) {
    std::atomic_ref<T>(x).store(v, std::memory_order_relaxed);
}

template <class T>
void atomic_add_relaxed(T& x, T v) {
    std::atomic_ref<T> r(x);
    if constexpr (std::is_floating_point_v<T>) {
        T cur = r.load(std::memory_order_relaxed);
        while (!r.compare_exchange_weak(cur, cur + v, std::memory_order_relaxed)) {
        }
    } else {
        r.fetch_add(v, std::memory_order_relaxed);
    }
}

} // namespace detail

// Handle to one neuron inside the store. get<I>() is plain field access and
// is only safe for state the current work item owns (its own neuron in
// init/update). Cross-neuron writes during spike delivery must go through
// add<I>/put<I>: with Atomic set these are lock-free read-modify-write /
// store operations, so concurrent deliveries into one target accumulate
// correctly.
template <class Store, bool Atomic>
class neuron_ref {
public:
    neuron_ref(Store* s, uint32_t id, xorshift* rng) : s_(s), id_(id), rng_(rng) {}

    uint32_t id() const { return id_; }

    template <size_t I>
    auto& get() const {
        return s_->template data<I>()[id_];
    }

    template <size_t I, class V>
    void add(V v) const {
        auto* p = s_->template data<I>() + id_;
        if constexpr (Atomic)
            detail::atomic_add_relaxed(*p, static_cast<std::remove_reference_t<decltype(*p)>>(v));
        else
            *p += v;
    }

    template <size_t I, class V>
    void put(V v) const {
        auto* p = s_->template data<I>() + id_;
        if constexpr (Atomic)
            detail::atomic_store_relaxed(*p, static_cast<std::remove_reference_t<decltype(*p)>>(v));
        else
            *p = v;
    }

    // independent per-neuron random stream
    xorshift& rng() const { return rng_[id_]; }

private:
    Store* s_;
    uint32_t id_;
    xorshift* rng_;
};

// Handle to one synapse in the synapse store; fields live at the tight
// (row = source, col) coordinate with pitch deg_max.
template <class Store>
class synapse_ref {
public:
    synapse_ref(Store* s, uint64_t index, uint32_t src, uint32_t dst)
        : s_(s), index_(index), src_(src), dst_(dst) {}

    uint32_t src() const { return src_; }
    uint32_t dst() const { return dst_; }

    template <size_t I>
    auto& get() const {
        return s_->template data<I>()[index_];
    }

private:
    Store* s_;
    uint64_t index_;
    uint32_t src_, dst_;
};

// Register-resident copy of one synapse used during lazy catch-up: the
// update loop runs on locals and the result is written back once.
template <class FieldList>
struct synapse_state;

template <class... Ts>
struct synapse_state<fields<Ts...>> {
    std::tuple<Ts...> v;
    uint32_t src_ = 0, dst_ = 0;

    uint32_t src() const { return src_; }
    uint32_t dst() const { return dst_; }

    template <size_t I>
    auto& get() {
        return std::get<I>(v);
    }

    template <class Store>
    void load(Store& s, uint64_t index) {
        [&]<size_t... Is>(std::index_sequence<Is...>) {
            ((std::get<Is>(v) = s.template data<Is>()[index]), ...);
        }(std::index_sequence_for<Ts...>{});
    }
    template <class Store>
    void store(Store& s, uint64_t index) const {
        [&]<size_t... Is>(std::index_sequence<Is...>) {
            ((s.template data<Is>()[index] = std::get<Is>(v)), ...);
        }(std::index_sequence_for<Ts...>{});
    }
};

} // namespace synq
