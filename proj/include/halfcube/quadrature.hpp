#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "halfcube/lattice.hpp"

namespace halfcube::quad {

enum class Method { AngularTrapezoid, MonteCarlo };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct QuadratureSpec {
    Method method = Method::AngularTrapezoid;
    int nodes = 4096;
    std::uint64_t seed = 1;
    bool use_symmetry = true;

    void validate(int d) const;  // nodes >= 16, angular-trapezoid requires d = 2
};

struct WeightedDirection {
    geom::Direction direction;
    double weight;
};

// Quadrature nodes on S^{d-1}. Angular-trapezoid (d = 2): midpoint angles
// (k+1/2) pi/(4K) on the fundamental arc [0, pi/4] with weight 8*(pi/4)/K
// when use_symmetry, else midpoints of the full circle. Monte-carlo:
// normalized Gaussian vectors from the counter-based generator keyed on
// (seed, index), weight sphere_area(d)/nodes.
std::vector<WeightedDirection> direction_nodes(int d, const QuadratureSpec& qspec);

// integral over S^{d-1} of |D_{sigma,r}(M)| d sigma, with an error estimate:
// sample standard error (monte-carlo) or the refinement difference
// |I_K - I_{K/2}| (trapezoid).
std::pair<double, double> integrate_abs_discrepancy(const lattice::LatticeSpec& spec, double r,
                                                    const QuadratureSpec& qspec,
                                                    unsigned n_threads = 0);

struct DiscrepancyProfile {
    lattice::LatticeSpec spec{2, 2, 0.5};
    QuadratureSpec qspec;
    std::vector<double> r_grid;
    std::vector<std::pair<double, double>> values;  // (integral, error estimate)
    double sup_value = 0.0;
    double sup_r = 0.0;
    double grid_resolution = 0.0;
};

// Uniform r-grid on [0, sqrt(d)] with both endpoints; the reported maximum is
// a grid supremum (a lower bound for the true sup).
DiscrepancyProfile sup_scan(const lattice::LatticeSpec& spec, int r_count,
                            const QuadratureSpec& qspec, unsigned n_threads = 0);

struct FitReport {
    int d = 0;
    double alpha = 0.0;
    std::vector<long long> M;
    std::vector<double> N;
    std::vector<double> sup_value;
    std::vector<double> sup_r;
    std::vector<double> sup_error;
    std::vector<double> ratio_logpow;  // S(M) / (log(2M+1))^d
    std::vector<double> ratio_poly;    // S(M) / M^{d-1}
    double slope_loglog = 0.0;         // least squares d log S / d log M
    double slope_error = 0.0;          // propagated from quadrature errors
};

// Requires >= 3 profiles sharing (d, alpha) with distinct M.
FitReport scaling_fit(const std::vector<DiscrepancyProfile>& profiles);

}  // namespace halfcube::quad
