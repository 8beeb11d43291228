#pragma once

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "meridian/core.hpp"
#include "meridian/errors.hpp"

namespace meridian {

// Inclusive linspace; n == 1 collapses to lo.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 8;

    void validate(const char* name) const {
        if (n < 1) throw InvalidParams(std::string(name) + ": axis needs n >= 1");
        if (!(lo <= hi)) throw InvalidParams(std::string(name) + ": axis needs lo <= hi");
    }

    double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }

    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = at(i);
        return v;
    }
};

// Sample layout shared by the verifier and the exporters: an (x0, second) grid,
// lifted to R^3 with theta rings when a system lives in three variables. The
// meaning of `second` is per-system (cylindrical rho, or the x2 coordinate).
struct GridSpec {
    Axis x0{-1.0, 1.0, 8};
    Axis second{0.25, 2.0, 8};
    int theta_rings = 4;

    void validate() const {
        x0.validate("x0");
        second.validate("second");
        if (theta_rings < 1) throw InvalidParams("theta_rings must be >= 1");
    }
};

// Thread cap: MERIDIAN_THREADS wins over hardware concurrency; at least 1.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("MERIDIAN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Runs fn(i) for i in [0, n). Results must be written to per-index slots so
// the caller's sequential reduction is deterministic for any thread count.
// A throw from fn is rethrown after all workers join (lowest worker id wins).
template <class Fn>
void parallel_index(std::size_t n, Fn&& fn) {
    const unsigned workers = thread_cap();
    if (workers <= 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : failures)
        if (e) std::rethrow_exception(e);
}

}  // namespace meridian
