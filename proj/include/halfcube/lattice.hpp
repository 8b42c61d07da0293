#pragma once

#include <vector>

#include "halfcube/geometry.hpp"

namespace halfcube::lattice {

// Dilation family (M + alpha) of the half-cube; alpha = 1/2 is the
// construction whose discrepancy stays polylogarithmic.
struct LatticeSpec {
    int d = 2;
    long long M = 2;
    double alpha = 0.5;

    LatticeSpec(int d_, long long M_, double alpha_ = 0.5);
    double point_count() const;  // N = (2M+1)^d, as a double (may exceed 2^63 guard use)
};

struct CountResult {
    long long count = 0;
    double expected = 0.0;
    double discrepancy = 0.0;  // count - expected, evaluated in double
};

// card{ m in Z^d : |m|_inf <= M, m.sigma <= (M+alpha) r }. Points exactly on
// the hyperplane count as inside (closed half-space). O((2M+1)^{d-1}) per
// query: the coordinate with the largest |sigma_j| is solved per slice.
long long count_cut(const LatticeSpec& spec, const geom::Direction& sigma, double r);

// Reference O((2M+1)^d) enumeration; kept as an independent counting route.
long long count_cut_naive(const LatticeSpec& spec, const geom::Direction& sigma, double r);

// D_{sigma,r}(M) = count - (M+alpha)^d |P_{sigma,r}|.
CountResult lattice_discrepancy(const LatticeSpec& spec, const geom::Direction& sigma, double r);

// Point-set form: count - N 2^{-d} |P_{sigma,r}| for the N points m/(M+alpha).
CountResult point_discrepancy(const LatticeSpec& spec, const geom::Direction& sigma, double r);

// Sorted multiset { m.sigma : |m|_inf <= M }; counting for any r is then a
// binary search for (M+alpha) r. Guarded at (2M+1)^d <= 1e8.
std::vector<double> projection_profile(const LatticeSpec& spec, const geom::Direction& sigma);

long long count_from_profile(const std::vector<double>& profile, const LatticeSpec& spec, double r);

// The N points m/(M+alpha), |m|_inf <= M. Guarded at (2M+1)^d <= 1e8.
std::vector<std::vector<double>> point_set(const LatticeSpec& spec);

}  // namespace halfcube::lattice
