#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace halfcube {

inline constexpr const char* kToolVersion = "0.1.0";

// Thrown when an operation would exceed a documented size guard.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Compensated (Kahan) accumulator for long alternating or near-canceling sums.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
    double ax = std::abs(x);
    if (ax < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// e^{-2 pi i x}; the phase is reduced modulo 1 before exponentiation so the
// argument passed to sin/cos stays in [-pi, pi] even for large dilations.
inline std::complex<double> unit_phase(double x) {
    double f = x - std::nearbyint(x);
    double a = -6.283185307179586476925287 * f;
    return {std::cos(a), std::sin(a)};
}

// Counter-based deterministic generator: a pure function of (seed, index,
// draw), so parallel evaluation order cannot change any stream.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t keyed(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64(h ^ splitmix64(index));
    return splitmix64(h ^ splitmix64(draw));
}

// Uniform double in (0,1]; never returns 0 so log() below is safe.
inline double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    std::uint64_t bits = keyed(seed, index, draw);
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

// Standard Gaussian via Box-Muller on two counter-derived uniforms.
inline double gaussian(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    double u1 = uniform01(seed, index, 2 * draw);
    double u2 = uniform01(seed, index, 2 * draw + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace rng

// Static block partition over [0, n); each task writes only its own indices,
// so results are independent of the number of threads.
template <class F>
void parallel_for(std::size_t n, F&& body, unsigned n_threads = 0) {
    if (n == 0) return;
    unsigned hw = n_threads ? n_threads : std::thread::hardware_concurrency();
    if (hw <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = n * t / workers;
        std::size_t hi = n * (t + 1) / workers;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace halfcube
