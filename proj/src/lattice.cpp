#include "halfcube/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace halfcube::lattice {

namespace {

constexpr double kSizeGuard = 1e8;

// Odometer over m in [-M, M]^n; returns false when the last combination has
// been visited.
bool advance(std::vector<long long>& m, long long M) {
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] < M) {
            ++m[j];
            return true;
        }
        m[j] = -M;
    }
    return false;
}

void check_dims(const LatticeSpec& spec, const geom::Direction& sigma) {
    if (sigma.dim() != spec.d)
        throw std::invalid_argument("lattice: direction dimension does not match spec");
}

}  // namespace

LatticeSpec::LatticeSpec(int d_, long long M_, double alpha_) : d(d_), M(M_), alpha(alpha_) {
    if (d < 2) throw std::invalid_argument("LatticeSpec: d must be >= 2");
    if (M <= 1) throw std::invalid_argument("LatticeSpec: M must be an integer > 1");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("LatticeSpec: alpha must lie in [0,1)");
    // Keep (M+alpha)*sqrt(d)*|m| far below the 2^53 integer-exactness limit.
    if (M > (1LL << 40)) throw std::invalid_argument("LatticeSpec: M exceeds the precision cap 2^40");
}

double LatticeSpec::point_count() const {
    return std::pow(2.0 * static_cast<double>(M) + 1.0, d);
}

long long count_cut(const LatticeSpec& spec, const geom::Direction& sigma, double r) {
    check_dims(spec, sigma);
    if (!(r >= 0)) throw std::invalid_argument("count_cut: r must be >= 0");
    const int d = spec.d;
    const long long M = spec.M;
    const double R = (static_cast<double>(M) + spec.alpha) * r;

    // Sign flips m_j -> -m_j leave the box and the products m_j * sigma_j
    // bit-identical, so work with |sigma|.
    std::vector<double> s(static_cast<std::size_t>(d));
    int jstar = 0;
    for (int j = 0; j < d; ++j) {
        s[static_cast<std::size_t>(j)] = std::abs(sigma[j]);
        if (s[static_cast<std::size_t>(j)] > s[static_cast<std::size_t>(jstar)]) jstar = j;
    }
    const double sj = s[static_cast<std::size_t>(jstar)];

    std::vector<double> others;
    for (int j = 0; j < d; ++j)
        if (j != jstar) others.push_back(s[static_cast<std::size_t>(j)]);

    std::vector<long long> m(others.size(), -M);
    const long long width = 2 * M + 1;
    long long total = 0;
    bool more = true;
    while (more) {
        double dot = 0.0;
        for (std::size_t j = 0; j < others.size(); ++j)
            dot += static_cast<double>(m[j]) * others[j];
        const double lim = R - dot;
        const double eps = 1e-12 * std::max(1.0, std::abs(lim));
        // Floor with a relative guard band, then verify one integer step in
        // each direction: floating floor errors flip counts by +-1 near ties.
        double tau = lim / sj;
        long long f = static_cast<long long>(std::floor(tau + 1e-12 * std::max(1.0, std::abs(tau))));
        if (static_cast<double>(f + 1) * sj <= lim + eps)
            ++f;
        else if (static_cast<double>(f) * sj > lim + eps)
            --f;
        if (f >= M)
            total += width;
        else if (f >= -M)
            total += f + M + 1;
        more = advance(m, M);
    }
    return total;
}

long long count_cut_naive(const LatticeSpec& spec, const geom::Direction& sigma, double r) {
    check_dims(spec, sigma);
    if (!(r >= 0)) throw std::invalid_argument("count_cut_naive: r must be >= 0");
    const double R = (static_cast<double>(spec.M) + spec.alpha) * r;
    const double eps = 1e-12 * std::max(1.0, std::abs(R));
    std::vector<long long> m(static_cast<std::size_t>(spec.d), -spec.M);
    long long total = 0;
    bool more = true;
    while (more) {
        double dot = 0.0;
        for (int j = 0; j < spec.d; ++j)
            dot += static_cast<double>(m[static_cast<std::size_t>(j)]) * sigma[j];
        if (dot <= R + eps) ++total;
        more = advance(m, spec.M);
    }
    return total;
}

CountResult lattice_discrepancy(const LatticeSpec& spec, const geom::Direction& sigma, double r) {
    CountResult res;
    res.count = count_cut(spec, sigma, r);
    res.expected = std::pow(static_cast<double>(spec.M) + spec.alpha, spec.d) *
                   geom::cut_volume(sigma, r);
    res.discrepancy = static_cast<double>(res.count) - res.expected;
    return res;
}

CountResult point_discrepancy(const LatticeSpec& spec, const geom::Direction& sigma, double r) {
    CountResult res;
    res.count = count_cut(spec, sigma, r);
    res.expected = spec.point_count() * std::ldexp(1.0, -spec.d) * geom::cut_volume(sigma, r);
    res.discrepancy = static_cast<double>(res.count) - res.expected;
    return res;
}

std::vector<double> projection_profile(const LatticeSpec& spec, const geom::Direction& sigma) {
    check_dims(spec, sigma);
    if (spec.point_count() > kSizeGuard)
        throw ResourceError(
            "projection_profile: (2M+1)^d exceeds 1e8; count slice-wise with count_cut instead");
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(spec.point_count()));
    std::vector<long long> m(static_cast<std::size_t>(spec.d), -spec.M);
    bool more = true;
    while (more) {
        double dot = 0.0;
        for (int j = 0; j < spec.d; ++j)
            dot += static_cast<double>(m[static_cast<std::size_t>(j)]) * sigma[j];
        vals.push_back(dot);
        more = advance(m, spec.M);
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

long long count_from_profile(const std::vector<double>& profile, const LatticeSpec& spec,
                             double r) {
    const double R = (static_cast<double>(spec.M) + spec.alpha) * r;
    const double eps = 1e-12 * std::max(1.0, std::abs(R));
    auto it = std::upper_bound(profile.begin(), profile.end(), R + eps);
    return static_cast<long long>(it - profile.begin());
}

std::vector<std::vector<double>> point_set(const LatticeSpec& spec) {
    if (spec.point_count() > kSizeGuard)
        throw ResourceError("point_set: (2M+1)^d exceeds 1e8");
    const double scale = 1.0 / (static_cast<double>(spec.M) + spec.alpha);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(spec.point_count()));
    std::vector<long long> m(static_cast<std::size_t>(spec.d), -spec.M);
    bool more = true;
    while (more) {
        std::vector<double> p(static_cast<std::size_t>(spec.d));
        for (int j = 0; j < spec.d; ++j)
            p[static_cast<std::size_t>(j)] = static_cast<double>(m[static_cast<std::size_t>(j)]) * scale;
        pts.push_back(std::move(p));
        more = advance(m, spec.M);
    }
    return pts;
}

}  // namespace halfcube::lattice
