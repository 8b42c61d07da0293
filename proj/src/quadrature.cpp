#include "halfcube/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace halfcube::quad {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kProfileGuard = 1e8;

geom::Direction monte_carlo_direction(int d, std::uint64_t seed, std::uint64_t index) {
    std::vector<double> g(static_cast<std::size_t>(d));
    for (std::uint64_t attempt = 0;; ++attempt) {
        for (int j = 0; j < d; ++j)
            g[static_cast<std::size_t>(j)] =
                rng::gaussian(seed, index, attempt * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j));
        double n2 = 0.0;
        for (double x : g) n2 += x * x;
        double n = std::sqrt(n2);
        if (n > 1e-8) {
            for (double& x : g) x /= n;
            // Renormalize once: |g|=1 to ~1e-16, within the Direction gate.
            return geom::Direction(g);
        }
    }
}

// Evaluate |D_{sigma,r}| for one node over the whole r-grid. Uses the sorted
// projection profile when the grid is long enough to amortize the sort.
void node_row(const lattice::LatticeSpec& spec, const geom::Direction& sigma,
              const std::vector<double>& r_grid, double* out) {
    const bool use_profile = r_grid.size() >= 8 && spec.point_count() <= kProfileGuard;
    const double dilation = std::pow(static_cast<double>(spec.M) + spec.alpha, spec.d);
    if (use_profile) {
        std::vector<double> profile = lattice::projection_profile(spec, sigma);
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            long long c = lattice::count_from_profile(profile, spec, r_grid[i]);
            double expected = dilation * geom::cut_volume(sigma, r_grid[i]);
            out[i] = std::abs(static_cast<double>(c) - expected);
        }
    } else {
        for (std::size_t i = 0; i < r_grid.size(); ++i)
            out[i] = std::abs(lattice::lattice_discrepancy(spec, sigma, r_grid[i]).discrepancy);
    }
}

struct GridIntegrals {
    std::vector<double> value;
    std::vector<double> error;
};

// Weighted sums over nodes, reduced in node-index order so results are
// bit-identical for any thread count.
GridIntegrals integrate_grid(const lattice::LatticeSpec& spec, const std::vector<double>& r_grid,
                             const QuadratureSpec& qspec, unsigned n_threads) {
    qspec.validate(spec.d);
    const std::size_t R = r_grid.size();

    auto weighted_sums = [&](const QuadratureSpec& qs) {
        std::vector<WeightedDirection> nodes = direction_nodes(spec.d, qs);
        std::vector<double> rows(nodes.size() * R);
        parallel_for(
            nodes.size(),
            [&](std::size_t i) { node_row(spec, nodes[i].direction, r_grid, &rows[i * R]); },
            n_threads);
        GridIntegrals out;
        out.value.assign(R, 0.0);
        out.error.assign(R, 0.0);
        for (std::size_t k = 0; k < R; ++k) {
            KahanSum s;
            for (std::size_t i = 0; i < nodes.size(); ++i) s.add(nodes[i].weight * rows[i * R + k]);
            out.value[k] = s.value();
        }
        if (qs.method == Method::MonteCarlo) {
            const double n = static_cast<double>(nodes.size());
            const double area = geom::sphere_area(spec.d);
            for (std::size_t k = 0; k < R; ++k) {
                const double mean = out.value[k] / area;
                KahanSum var;
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    double dlt = rows[i * R + k] - mean;
                    var.add(dlt * dlt);
                }
                double sd = n > 1 ? std::sqrt(var.value() / (n - 1.0)) : 0.0;
                out.error[k] = area * sd / std::sqrt(n);
            }
        }
        return out;
    };

    GridIntegrals fine = weighted_sums(qspec);
    if (qspec.method == Method::AngularTrapezoid) {
        QuadratureSpec half = qspec;
        half.nodes = std::max(1, qspec.nodes / 2);
        GridIntegrals coarse = weighted_sums(half);
        for (std::size_t k = 0; k < R; ++k) fine.error[k] = std::abs(fine.value[k] - coarse.value[k]);
    }
    return fine;
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "angular-trapezoid") return Method::AngularTrapezoid;
    if (name == "monte-carlo") return Method::MonteCarlo;
    throw std::invalid_argument("unknown quadrature method: " + name);
}

std::string method_name(Method m) {
    return m == Method::AngularTrapezoid ? "angular-trapezoid" : "monte-carlo";
}

void QuadratureSpec::validate(int d) const {
    if (nodes < 16) throw std::invalid_argument("QuadratureSpec: nodes must be >= 16");
    if (method == Method::AngularTrapezoid && d != 2)
        throw std::invalid_argument("angular-trapezoid quadrature requires d = 2");
}

std::vector<WeightedDirection> direction_nodes(int d, const QuadratureSpec& qspec) {
    if (qspec.method == Method::AngularTrapezoid && d != 2)
        throw std::invalid_argument("angular-trapezoid quadrature requires d = 2");
    std::vector<WeightedDirection> nodes;
    nodes.reserve(static_cast<std::size_t>(qspec.nodes));
    if (qspec.method == Method::AngularTrapezoid) {
        const int K = qspec.nodes;
        if (qspec.use_symmetry) {
            // Midpoints of the fundamental arc [0, pi/4]; midpoint offsets keep
            // nodes away from directions where lattice ties concentrate.
            const double step = kPi / (4.0 * K);
            for (int k = 0; k < K; ++k)
                nodes.push_back({geom::Direction::from_angle((k + 0.5) * step), 8.0 * step});
        } else {
            const double step = 2.0 * kPi / K;
            for (int k = 0; k < K; ++k)
                nodes.push_back({geom::Direction::from_angle((k + 0.5) * step), step});
        }
        return nodes;
    }
    const double w = geom::sphere_area(d) / qspec.nodes;
    for (int i = 0; i < qspec.nodes; ++i)
        nodes.push_back({monte_carlo_direction(d, qspec.seed, static_cast<std::uint64_t>(i)), w});
    return nodes;
}

std::pair<double, double> integrate_abs_discrepancy(const lattice::LatticeSpec& spec, double r,
                                                    const QuadratureSpec& qspec,
                                                    unsigned n_threads) {
    if (!(r >= 0.0 && r <= std::sqrt(static_cast<double>(spec.d)) + 1e-12))
        throw std::invalid_argument("integrate_abs_discrepancy: r must lie in [0, sqrt(d)]");
    GridIntegrals g = integrate_grid(spec, {r}, qspec, n_threads);
    return {g.value[0], g.error[0]};
}

DiscrepancyProfile sup_scan(const lattice::LatticeSpec& spec, int r_count,
                            const QuadratureSpec& qspec, unsigned n_threads) {
    if (r_count < 8) throw std::invalid_argument("sup_scan: r_count must be >= 8");
    DiscrepancyProfile prof;
    prof.spec = spec;
    prof.qspec = qspec;
    const double rmax = std::sqrt(static_cast<double>(spec.d));
    prof.grid_resolution = rmax / (r_count - 1);
    prof.r_grid.resize(static_cast<std::size_t>(r_count));
    for (int i = 0; i < r_count; ++i)
        prof.r_grid[static_cast<std::size_t>(i)] =
            (i == r_count - 1) ? rmax : i * prof.grid_resolution;

    GridIntegrals g = integrate_grid(spec, prof.r_grid, qspec, n_threads);
    prof.values.resize(prof.r_grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < prof.r_grid.size(); ++i) {
        prof.values[i] = {g.value[i], g.error[i]};
        if (g.value[i] > g.value[best]) best = i;
    }
    prof.sup_value = g.value[best];
    prof.sup_r = prof.r_grid[best];
    return prof;
}

FitReport scaling_fit(const std::vector<DiscrepancyProfile>& profiles) {
    if (profiles.size() < 3)
        throw std::invalid_argument("scaling_fit: need at least 3 profiles with distinct M");
    FitReport rep;
    rep.d = profiles.front().spec.d;
    rep.alpha = profiles.front().spec.alpha;
    std::vector<std::size_t> order(profiles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profiles[a].spec.M < profiles[b].spec.M;
    });
    for (std::size_t idx : order) {
        const auto& p = profiles[idx];
        if (p.spec.d != rep.d || p.spec.alpha != rep.alpha)
            throw std::invalid_argument("scaling_fit: profiles must share (d, alpha)");
        if (!rep.M.empty() && p.spec.M == rep.M.back())
            throw std::invalid_argument("scaling_fit: profiles must have distinct M");
        rep.M.push_back(p.spec.M);
        rep.N.push_back(p.spec.point_count());
        rep.sup_value.push_back(p.sup_value);
        rep.sup_r.push_back(p.sup_r);
        double err = 0.0;
        for (std::size_t i = 0; i < p.r_grid.size(); ++i)
            if (p.r_grid[i] == p.sup_r) err = p.values[i].second;
        rep.sup_error.push_back(err);
        double logN = std::log(2.0 * static_cast<double>(p.spec.M) + 1.0);
        rep.ratio_logpow.push_back(p.sup_value / std::pow(logN, rep.d));
        rep.ratio_poly.push_back(p.sup_value /
                                 std::pow(static_cast<double>(p.spec.M), rep.d - 1));
    }

    // Least-squares slope of log S against log M; first-order error
    // propagation of the per-point quadrature estimates.
    const std::size_t n = rep.M.size();
    std::vector<double> x(n), y(n);
    double xbar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(static_cast<double>(rep.M[i]));
        y[i] = std::log(rep.sup_value[i]);
        xbar += x[i] / static_cast<double>(n);
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * y[i];
    }
    rep.slope_loglog = sxy / sxx;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ci = (x[i] - xbar) / sxx;
        double sy = rep.sup_value[i] > 0 ? rep.sup_error[i] / rep.sup_value[i] : 0.0;
        var += ci * ci * sy * sy;
    }
    rep.slope_error = std::sqrt(var);
    return rep;
}

}  // namespace halfcube::quad
