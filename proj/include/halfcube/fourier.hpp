#pragma once

#include <complex>
#include <span>
#include <vector>

#include "halfcube/lattice.hpp"
#include "halfcube/quadrature.hpp"

namespace halfcube::fourier {

// Fourier transform of the unit-mass tent (2-4|x|)_+ :
// hat_phi(y) = (2 sin(pi y/2) / (pi y))^2, with hat_phi(0) = 1.
double hat_phi(double y);

// Product kernel at scale M^{d-1}: hat_Phi(m) = prod_j hat_phi(m_j / M^{d-1}).
struct SpectralKernel {
    int d;
    long long M;
    double scale() const;  // M^{d-1}
};

double hat_Phi(const SpectralKernel& kernel, std::span<const long long> m);

// Exact integral over the cell of e^{-2 pi i xi . t}, by the divergence
// recursion volume -> faces -> edges -> closed-form segment transforms. Below
// a projected frequency norm of 1e-8 a face switches to the flat-phase value
// phase(centroid) * measure instead of dividing by |xi_proj|^2.
std::complex<double> hat_chi_cell(const geom::ConvexCell& cell, std::span<const double> xi);

// sum_m (Phi_M * chi_{rho P_{sigma,r}})(m): terms away from the boundary are
// 0/1 by support separation; boundary terms integrate the tent product over
// the clipped intersection exactly (piecewise multilinear integrand).
double smoothed_lattice_sum(const lattice::LatticeSpec& spec, const geom::Direction& sigma,
                            double r, double dilation);

struct SmoothedCount {
    double dilation = 0.0;
    double lhs_sum = 0.0;
    double rhs_sum = 0.0;
    long long truncation_radius = 0;
    double tail_bound = 0.0;
};

// Rigorous bound on the spectral terms discarded beyond |m|_inf > K, from the
// per-coordinate envelope hat_phi(y) <= min(1, (2/(pi y))^2) and the surface
// bound |hat_chi_P(xi)| <= surf(P) / (2 pi |xi|).
double poisson_tail_bound(const lattice::LatticeSpec& spec, const geom::ConvexCell& cell,
                          double dilation, long long truncation_radius);

// Both sides of the Poisson identity
//   sum_m (Phi_M * chi_{rho P})(m) = rho^d sum_m hat_Phi_M(m) hat_chi_P(rho m)
// with the right side truncated at |m|_inf <= truncation_radius.
SmoothedCount poisson_check(const lattice::LatticeSpec& spec, const geom::Direction& sigma,
                            double r, double dilation, long long truncation_radius,
                            unsigned n_threads = 0);

struct DecayRow {
    double rho = 0.0;
    double integral = 0.0;  // integral over S^{d-1} of |hat_chi_cell(rho sigma)|
    double ratio = 0.0;     // integral * rho^d / (log rho)^{d-1}
};

// Spherical decay of the polytope transform; every rho must be >= 2.
std::vector<DecayRow> decay_probe(const std::vector<double>& rho_list,
                                  const quad::QuadratureSpec& qspec,
                                  const geom::ConvexCell& cell);

struct LogSumRow {
    long long M = 0;
    double sum = 0.0;    // sum over 0 < |m| <= M^{d-1}, m_j >= 0, of |m|^{-d}
    double ratio = 0.0;  // sum / log M
};

std::vector<LogSumRow> logsum_probe(int d, const std::vector<long long>& M_list);

namespace detail {
// integral of Phi_M(m - t) over a convex cell, exact for the piecewise
// multilinear tent product; exposed for oracle tests.
double tent_integral_over_cell(const geom::ConvexCell& cell, std::span<const double> m,
                               double kernel_scale);
}  // namespace detail

}  // namespace halfcube::fourier
