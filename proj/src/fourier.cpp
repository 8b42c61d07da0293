#include "halfcube/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace halfcube::fourier {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kProjTol = 1e-8;
constexpr std::complex<double> kI{0.0, 1.0};

using geom::ConvexCell;
using geom::Face;
using geom::Vec3;

std::complex<double> segment_transform(const Vec3& a, const Vec3& b, const Vec3& xi) {
    Vec3 mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
    Vec3 dir{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    // L * sinc(pi L xi.u) with u = dir/L collapses to sinc(pi xi.dir).
    return unit_phase(geom::dot3(xi, mid)) * geom::norm3(dir) * sinc(kPi * geom::dot3(xi, dir));
}

std::complex<double> face_transform_3d(const ConvexCell& cell, const Face& face, const Vec3& xi) {
    const Vec3& nu = face.normal;
    double xin = geom::dot3(xi, nu);
    Vec3 xip{xi[0] - xin * nu[0], xi[1] - xin * nu[1], xi[2] - xin * nu[2]};
    double pn2 = geom::dot3(xip, xip);
    if (pn2 < kProjTol * kProjTol)
        return unit_phase(geom::dot3(xi, geom::face_centroid(cell, face))) *
               geom::face_measure(cell, face);
    std::complex<double> acc{0.0, 0.0};
    const auto& vs = face.vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Vec3& a = cell.vertices[vs[i]];
        const Vec3& b = cell.vertices[vs[(i + 1) % vs.size()]];
        Vec3 dir{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        double len = geom::norm3(dir);
        if (len < 1e-14) continue;
        Vec3 u{dir[0] / len, dir[1] / len, dir[2] / len};
        Vec3 n_edge = geom::cross3(u, nu);  // outward within the face plane
        acc += geom::dot3(xip, n_edge) * segment_transform(a, b, xi);
    }
    return kI / (2.0 * kPi * pn2) * acc;
}

}  // namespace

double hat_phi(double y) {
    double s = sinc(0.5 * kPi * y);
    return s * s;
}

double SpectralKernel::scale() const {
    return std::pow(static_cast<double>(M), d - 1);
}

double hat_Phi(const SpectralKernel& kernel, std::span<const long long> m) {
    if (static_cast<int>(m.size()) != kernel.d)
        throw std::invalid_argument("hat_Phi: frequency dimension mismatch");
    const double T = kernel.scale();
    double prod = 1.0;
    for (long long mj : m) prod *= hat_phi(static_cast<double>(mj) / T);
    return prod;
}

std::complex<double> hat_chi_cell(const geom::ConvexCell& cell, std::span<const double> xi) {
    if (cell.dim != 2 && cell.dim != 3)
        throw std::invalid_argument("hat_chi_cell: cell dimension must be 2 or 3");
    if (static_cast<int>(xi.size()) != cell.dim)
        throw std::invalid_argument("hat_chi_cell: frequency dimension mismatch");
    if (cell.vertices.empty() || cell.faces.size() < static_cast<std::size_t>(cell.dim + 1))
        throw std::invalid_argument("hat_chi_cell: degenerate cell");

    Vec3 f{xi[0], xi[1], cell.dim == 3 ? xi[2] : 0.0};
    double n2 = geom::dot3(f, f);
    if (n2 < kProjTol * kProjTol)
        return unit_phase(geom::dot3(f, geom::cell_centroid(cell))) * geom::cell_volume(cell);

    std::complex<double> acc{0.0, 0.0};
    for (const auto& face : cell.faces) {
        double fn = geom::dot3(f, face.normal);
        if (cell.dim == 2) {
            acc += fn * segment_transform(cell.vertices[face.vertices[0]],
                                          cell.vertices[face.vertices[1]], f);
        } else {
            acc += fn * face_transform_3d(cell, face, f);
        }
    }
    return kI / (2.0 * kPi * n2) * acc;
}

namespace {

// ---- exact integration of the tent product over convex cells ----

struct Linear {
    // a + b * t[axis]
    double a, b;
    int axis;
    double at(const Vec3& p) const { return a + b * p[axis]; }
};

double tri_integral_2d(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Linear& f,
                       const Linear& g) {
    double area = 0.5 * std::abs((p2[0] - p1[0]) * (p3[1] - p1[1]) -
                                 (p3[0] - p1[0]) * (p2[1] - p1[1]));
    double fv[3] = {f.at(p1), f.at(p2), f.at(p3)};
    double gv[3] = {g.at(p1), g.at(p2), g.at(p3)};
    double sf = fv[0] + fv[1] + fv[2], sg = gv[0] + gv[1] + gv[2];
    double diag = fv[0] * gv[0] + fv[1] * gv[1] + fv[2] * gv[2];
    return area / 12.0 * (sf * sg + diag);
}

double tet_integral_3d(const Vec3 q[4], const Linear& f, const Linear& g, const Linear& h) {
    Vec3 e1, e2, e3;
    for (int k = 0; k < 3; ++k) {
        e1[k] = q[1][k] - q[0][k];
        e2[k] = q[2][k] - q[0][k];
        e3[k] = q[3][k] - q[0][k];
    }
    double vol = geom::dot3(e1, geom::cross3(e2, e3)) / 6.0;
    double fv[4], gv[4], hv[4];
    for (int i = 0; i < 4; ++i) {
        fv[i] = f.at(q[i]);
        gv[i] = g.at(q[i]);
        hv[i] = h.at(q[i]);
    }
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double w = (i == j && j == k) ? 6.0 : ((i == j || j == k || i == k) ? 2.0 : 1.0);
                acc += w * fv[i] * gv[j] * hv[k];
            }
    return vol / 120.0 * acc;
}

double cell_poly_integral(const ConvexCell& cell, const std::vector<Linear>& factors) {
    if (cell.vertices.size() < static_cast<std::size_t>(cell.dim + 1)) return 0.0;
    double acc = 0.0;
    if (cell.dim == 2) {
        for (std::size_t i = 1; i + 1 < cell.vertices.size(); ++i)
            acc += tri_integral_2d(cell.vertices[0], cell.vertices[i], cell.vertices[i + 1],
                                   factors[0], factors[1]);
        return acc;
    }
    Vec3 c = geom::cell_centroid(cell);
    for (const auto& face : cell.faces) {
        const auto& vs = face.vertices;
        for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
            Vec3 q[4] = {c, cell.vertices[vs[0]], cell.vertices[vs[i]], cell.vertices[vs[i + 1]]};
            acc += tet_integral_3d(q, factors[0], factors[1], factors[2]);
        }
    }
    return acc;
}

// Recursively split the cell at the tent kinks t_axis = m_axis, then integrate
// the multilinear piece on each side.
double tent_split_integral(const ConvexCell& cell, std::span<const double> m, double T,
                           int axis, std::vector<Linear>& factors) {
    if (cell.vertices.empty()) return 0.0;
    if (axis == cell.dim) {
        double scale = std::pow(T, cell.dim);
        double v = cell_poly_integral(cell, factors);
        return scale * v;
    }
    Vec3 plane{0, 0, 0};
    plane[axis] = 1.0;
    double acc = 0.0;
    // left piece: t <= m_axis, phi = (2 - 4 T m) + 4 T t
    ConvexCell left = geom::clip_cell(cell, plane, m[axis]);
    factors.push_back({2.0 - 4.0 * T * m[axis], 4.0 * T, axis});
    acc += tent_split_integral(left, m, T, axis + 1, factors);
    factors.pop_back();
    // right piece: t >= m_axis, phi = (2 + 4 T m) - 4 T t
    Vec3 nplane{0, 0, 0};
    nplane[axis] = -1.0;
    ConvexCell right = geom::clip_cell(cell, nplane, -m[axis]);
    factors.push_back({2.0 + 4.0 * T * m[axis], -4.0 * T, axis});
    acc += tent_split_integral(right, m, T, axis + 1, factors);
    factors.pop_back();
    return acc;
}

ConvexCell make_box_cell(int dim, const Vec3& center, double halfwidth) {
    ConvexCell box = geom::make_cube_cell(dim, halfwidth);
    for (auto& v : box.vertices)
        for (int k = 0; k < 3; ++k) v[k] += center[k];
    return box;
}

void check_desk_scale(const lattice::LatticeSpec& spec) {
    if (spec.d != 2 && spec.d != 3)
        throw std::invalid_argument("smoothed sums support d in {2,3} only");
    if (spec.M > 8)
        throw ResourceError("smoothed sums are desk-scale: M <= 8");
}

}  // namespace

double detail::tent_integral_over_cell(const geom::ConvexCell& cell, std::span<const double> m,
                                       double kernel_scale) {
    std::vector<Linear> factors;
    return tent_split_integral(cell, m, kernel_scale, 0, factors);
}

double smoothed_lattice_sum(const lattice::LatticeSpec& spec, const geom::Direction& sigma,
                            double r, double dilation) {
    check_desk_scale(spec);
    if (!(r >= 0)) throw std::invalid_argument("smoothed_lattice_sum: r must be >= 0");
    if (!(dilation > 0)) throw std::invalid_argument("smoothed_lattice_sum: dilation must be > 0");
    const int d = spec.d;
    const double T = SpectralKernel{d, spec.M}.scale();
    const double h = 0.5 / T;  // per-axis support halfwidth of Phi_M
    const double rho = dilation;
    const double Rcut = rho * r;

    double sig_l1 = 0.0;
    for (int j = 0; j < d; ++j) sig_l1 += std::abs(sigma[j]);

    const long long Mb = static_cast<long long>(std::floor(rho + h)) + 1;
    std::vector<long long> m(static_cast<std::size_t>(d), -Mb);
    KahanSum total;
    bool more = true;
    while (more) {
        double linf = 0.0, dotsig = 0.0;
        for (int j = 0; j < d; ++j) {
            linf = std::max(linf, std::abs(static_cast<double>(m[static_cast<std::size_t>(j)])));
            dotsig += static_cast<double>(m[static_cast<std::size_t>(j)]) * sigma[j];
        }
        bool outside = (linf - h > rho) || (dotsig - h * sig_l1 > Rcut);
        if (!outside) {
            bool inside = (linf + h <= rho) && (dotsig + h * sig_l1 <= Rcut);
            if (inside) {
                total.add(1.0);
            } else {
                // boundary-near: clip the support box against rho P and
                // integrate the tent product over the intersection.
                Vec3 center{static_cast<double>(m[0]), static_cast<double>(m[1]),
                            d == 3 ? static_cast<double>(m[2]) : 0.0};
                ConvexCell region = make_box_cell(d, center, h);
                for (int j = 0; j < d && !region.vertices.empty(); ++j) {
                    Vec3 p{0, 0, 0};
                    p[j] = 1.0;
                    if (center[j] + h > rho) region = geom::clip_cell(region, p, rho);
                    if (region.vertices.empty()) break;
                    p[j] = -1.0;
                    if (center[j] - h < -rho) region = geom::clip_cell(region, p, rho);
                }
                if (!region.vertices.empty() && dotsig + h * sig_l1 > Rcut) {
                    Vec3 nrm{sigma[0], sigma[1], d == 3 ? sigma[2] : 0.0};
                    region = geom::clip_cell(region, nrm, Rcut);
                }
                if (!region.vertices.empty()) {
                    double mv[3] = {center[0], center[1], center[2]};
                    total.add(detail::tent_integral_over_cell(region, {mv, static_cast<std::size_t>(d)}, T));
                }
            }
        }
        more = [&] {
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (m[j] < Mb) {
                    ++m[j];
                    return true;
                }
                m[j] = -Mb;
            }
            return false;
        }();
    }
    return total.value();
}

double poisson_tail_bound(const lattice::LatticeSpec& spec, const geom::ConvexCell& cell,
                          double dilation, long long K) {
    const int d = spec.d;
    const double T = SpectralKernel{d, spec.M}.scale();
    const double env = (2.0 * T / kPi) * (2.0 * T / kPi);  // hat_phi(k/T) <= env/k^2
    double g_total = 1.0;
    for (long long k = 1; k <= K; ++k)
        g_total += 2.0 * std::min(1.0, env / (static_cast<double>(k) * static_cast<double>(k)));
    g_total += 2.0 * env / static_cast<double>(K);
    const double g_tail = 2.0 * env / static_cast<double>(K);

    double surf = 0.0;
    for (const auto& face : cell.faces) surf += geom::face_measure(cell, face);

    return std::pow(dilation, d - 1) * surf * d * g_tail * std::pow(g_total, d - 1) /
           (2.0 * kPi * static_cast<double>(K + 1));
}

SmoothedCount poisson_check(const lattice::LatticeSpec& spec, const geom::Direction& sigma,
                            double r, double dilation, long long truncation_radius,
                            unsigned n_threads) {
    check_desk_scale(spec);
    if (truncation_radius < 1)
        throw std::invalid_argument("poisson_check: truncation radius must be >= 1");
    const int d = spec.d;
    const long long K = truncation_radius;
    const ConvexCell cell = geom::clip_cube(sigma, r);
    const SpectralKernel kernel{d, spec.M};
    const double T = kernel.scale();

    SmoothedCount out;
    out.dilation = dilation;
    out.truncation_radius = K;
    out.tail_bound = poisson_tail_bound(spec, cell, dilation, K);
    out.lhs_sum = smoothed_lattice_sum(spec, sigma, r, dilation);

    // rho^d sum over |m|_inf <= K; conjugate symmetry halves the work: pair
    // m with -m and keep twice the real part. Rows of constant m_last are
    // independent tasks; the final reduction is in fixed row order.
    const double vol_term = geom::cell_volume(cell);  // m = 0 contribution
    const std::size_t rows = static_cast<std::size_t>(K + 1);
    std::vector<double> row_sum(rows, 0.0);
    parallel_for(
        rows,
        [&](std::size_t row) {
            const long long mlast = static_cast<long long>(row);
            KahanSum acc;
            std::vector<long long> m(static_cast<std::size_t>(d), 0);
            std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
            m[static_cast<std::size_t>(d - 1)] = mlast;
            // iterate the leading d-1 coordinates over [-K, K]; when
            // mlast == 0 keep only lexicographically positive leaders.
            std::vector<long long> lead(static_cast<std::size_t>(d - 1), -K);
            bool more = true;
            while (more) {
                bool keep = true;
                if (mlast == 0) {
                    keep = false;
                    for (std::size_t j = lead.size(); j-- > 0;) {
                        if (lead[j] != 0) {
                            keep = lead[j] > 0;
                            break;
                        }
                    }
                }
                if (keep) {
                    for (std::size_t j = 0; j < lead.size(); ++j) m[j] = lead[j];
                    double hp = 1.0;
                    for (int j = 0; j < d; ++j)
                        hp *= hat_phi(static_cast<double>(m[static_cast<std::size_t>(j)]) / T);
                    if (hp != 0.0) {
                        for (int j = 0; j < d; ++j)
                            xi[static_cast<std::size_t>(j)] =
                                dilation * static_cast<double>(m[static_cast<std::size_t>(j)]);
                        acc.add(hp * 2.0 * hat_chi_cell(cell, xi).real());
                    }
                }
                more = [&] {
                    for (std::size_t j = 0; j < lead.size(); ++j) {
                        if (lead[j] < K) {
                            ++lead[j];
                            return true;
                        }
                        lead[j] = -K;
                    }
                    return false;
                }();
            }
            row_sum[row] = acc.value();
        },
        n_threads);

    KahanSum rhs;
    rhs.add(vol_term);
    for (std::size_t row = 0; row < rows; ++row) rhs.add(row_sum[row]);
    out.rhs_sum = std::pow(dilation, d) * rhs.value();
    return out;
}

std::vector<DecayRow> decay_probe(const std::vector<double>& rho_list,
                                  const quad::QuadratureSpec& qspec,
                                  const geom::ConvexCell& cell) {
    for (double rho : rho_list)
        if (!(rho >= 2.0)) throw std::invalid_argument("decay_probe: every rho must be >= 2");
    const int d = cell.dim;
    std::vector<quad::WeightedDirection> nodes = quad::direction_nodes(d, qspec);
    std::vector<DecayRow> table;
    table.reserve(rho_list.size());
    for (double rho : rho_list) {
        KahanSum acc;
        std::vector<double> xi(static_cast<std::size_t>(d));
        for (const auto& node : nodes) {
            for (int j = 0; j < d; ++j) xi[static_cast<std::size_t>(j)] = rho * node.direction[j];
            acc.add(node.weight * std::abs(hat_chi_cell(cell, xi)));
        }
        DecayRow row;
        row.rho = rho;
        row.integral = acc.value();
        row.ratio = row.integral * std::pow(rho, d) / std::pow(std::log(rho), d - 1);
        table.push_back(row);
    }
    return table;
}

std::vector<LogSumRow> logsum_probe(int d, const std::vector<long long>& M_list) {
    if (d != 2 && d != 3) throw std::invalid_argument("logsum_probe: d must be 2 or 3");
    std::vector<LogSumRow> table;
    for (long long M : M_list) {
        if (M <= 1) throw std::invalid_argument("logsum_probe: M must be > 1");
        const double Td = std::pow(static_cast<double>(M), d - 1);
        if ((d == 2 && Td > 1e4) || (d == 3 && Td > 1e2))
            throw ResourceError("logsum_probe: M^{d-1} exceeds the per-axis guard");
        const long long T = static_cast<long long>(Td + 0.5);
        const double T2 = static_cast<double>(T) * static_cast<double>(T);
        KahanSum acc;
        if (d == 2) {
            for (long long m1 = 0; m1 <= T; ++m1)
                for (long long m2 = 0; m2 <= T; ++m2) {
                    double n2 = static_cast<double>(m1 * m1 + m2 * m2);
                    if (n2 == 0.0 || n2 > T2) continue;
                    acc.add(1.0 / n2);
                }
        } else {
            for (long long m1 = 0; m1 <= T; ++m1)
                for (long long m2 = 0; m2 <= T; ++m2)
                    for (long long m3 = 0; m3 <= T; ++m3) {
                        double n2 = static_cast<double>(m1 * m1 + m2 * m2 + m3 * m3);
                        if (n2 == 0.0 || n2 > T2) continue;
                        acc.add(1.0 / (n2 * std::sqrt(n2)));
                    }
        }
        LogSumRow row;
        row.M = M;
        row.sum = acc.value();
        row.ratio = row.sum / std::log(static_cast<double>(M));
        table.push_back(row);
    }
    return table;
}

}  // namespace halfcube::fourier
