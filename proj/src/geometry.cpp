#include "halfcube/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace halfcube::geom {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kDegenerateTol = 1e-12;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

Direction::Direction(std::vector<double> components) : comps_(std::move(components)) {
    if (comps_.size() < 2) throw std::invalid_argument("Direction: need dimension >= 2");
    double n2 = 0.0;
    for (double c : comps_) n2 += c * c;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw std::invalid_argument("Direction: components must have unit Euclidean norm");
}

Direction Direction::from_angle(double theta) {
    return Direction({std::cos(theta), std::sin(theta)});
}

Direction Direction::negated() const {
    std::vector<double> c(comps_);
    for (double& x : c) x = -x;
    return Direction(std::move(c));
}

double face_measure(const ConvexCell& cell, const Face& face) {
    const auto& vs = face.vertices;
    if (cell.dim == 2) {
        Vec3 a = cell.vertices[vs[0]], b = cell.vertices[vs[1]];
        return std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    Vec3 acc{0, 0, 0};
    const Vec3& v0 = cell.vertices[vs[0]];
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        Vec3 e1, e2;
        for (int k = 0; k < 3; ++k) {
            e1[k] = cell.vertices[vs[i]][k] - v0[k];
            e2[k] = cell.vertices[vs[i + 1]][k] - v0[k];
        }
        Vec3 c = cross3(e1, e2);
        for (int k = 0; k < 3; ++k) acc[k] += 0.5 * c[k];
    }
    return norm3(acc);
}

Vec3 face_centroid(const ConvexCell& cell, const Face& face) {
    const auto& vs = face.vertices;
    if (cell.dim == 2) {
        Vec3 a = cell.vertices[vs[0]], b = cell.vertices[vs[1]];
        return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.0};
    }
    // Area-weighted fan of triangles.
    Vec3 c{0, 0, 0};
    double total = 0.0;
    const Vec3& v0 = cell.vertices[vs[0]];
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        const Vec3& v1 = cell.vertices[vs[i]];
        const Vec3& v2 = cell.vertices[vs[i + 1]];
        Vec3 e1, e2;
        for (int k = 0; k < 3; ++k) {
            e1[k] = v1[k] - v0[k];
            e2[k] = v2[k] - v0[k];
        }
        double a = 0.5 * norm3(cross3(e1, e2));
        total += a;
        for (int k = 0; k < 3; ++k) c[k] += a * (v0[k] + v1[k] + v2[k]) / 3.0;
    }
    if (total <= 0.0) return v0;
    for (int k = 0; k < 3; ++k) c[k] /= total;
    return c;
}

Vec3 cell_centroid(const ConvexCell& cell) {
    Vec3 c{0, 0, 0};
    for (const auto& v : cell.vertices)
        for (int k = 0; k < 3; ++k) c[k] += v[k];
    double n = static_cast<double>(cell.vertices.size());
    for (int k = 0; k < 3; ++k) c[k] /= n;
    return c;
}

double cell_volume(const ConvexCell& cell) {
    KahanSum s;
    for (const auto& f : cell.faces)
        s.add(dot3(face_centroid(cell, f), f.normal) * face_measure(cell, f));
    return s.value() / cell.dim;
}

ConvexCell make_cube_cell(int dim, double w) {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("make_cube_cell: only dimensions 2 and 3 are supported");
    ConvexCell cell;
    cell.dim = dim;
    if (dim == 2) {
        cell.vertices = {{w, -w, 0}, {w, w, 0}, {-w, w, 0}, {-w, -w, 0}};
        auto edge = [&](int a, int b, Vec3 n, int axis, int side) {
            cell.faces.push_back({{a, b}, n, {FaceTag::Kind::Cube, axis, side}});
        };
        edge(0, 1, {1, 0, 0}, 0, +1);
        edge(1, 2, {0, 1, 0}, 1, +1);
        edge(2, 3, {-1, 0, 0}, 0, -1);
        edge(3, 0, {0, -1, 0}, 1, -1);
        return cell;
    }
    for (int i = 0; i < 8; ++i)
        cell.vertices.push_back({(i & 1) ? w : -w, (i & 2) ? w : -w, (i & 4) ? w : -w});
    auto face = [&](std::vector<int> vs, Vec3 n, int axis, int side) {
        cell.faces.push_back({std::move(vs), n, {FaceTag::Kind::Cube, axis, side}});
    };
    // CCW when viewed from outside.
    face({1, 3, 7, 5}, {1, 0, 0}, 0, +1);
    face({0, 4, 6, 2}, {-1, 0, 0}, 0, -1);
    face({2, 6, 7, 3}, {0, 1, 0}, 1, +1);
    face({0, 1, 5, 4}, {0, -1, 0}, 1, -1);
    face({4, 5, 7, 6}, {0, 0, 1}, 2, +1);
    face({0, 2, 3, 1}, {0, 0, -1}, 2, -1);
    return cell;
}

namespace {

struct VertexMerger {
    std::vector<Vec3> verts;
    int add(const Vec3& v) {
        for (std::size_t i = 0; i < verts.size(); ++i) {
            double d = std::abs(verts[i][0] - v[0]) + std::abs(verts[i][1] - v[1]) +
                       std::abs(verts[i][2] - v[2]);
            if (d < 3 * kMergeTol) return static_cast<int>(i);
        }
        verts.push_back(v);
        return static_cast<int>(verts.size()) - 1;
    }
};

Vec3 lerp_plane(const Vec3& a, const Vec3& b, double fa, double fb) {
    double t = fa / (fa - fb);
    return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])};
}

ConvexCell clip_cell_2d(const ConvexCell& cell, const Vec3& n, double c) {
    // Sutherland-Hodgman on the vertex cycle, tags re-derived by the caller.
    std::vector<Vec3> poly;
    const std::size_t nv = cell.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const Vec3& a = cell.vertices[i];
        const Vec3& b = cell.vertices[(i + 1) % nv];
        double fa = dot3(n, a) - c;
        double fb = dot3(n, b) - c;
        if (fa <= kMergeTol) poly.push_back(a);
        if ((fa < -kMergeTol && fb > kMergeTol) || (fa > kMergeTol && fb < -kMergeTol))
            poly.push_back(lerp_plane(a, b, fa, fb));
    }
    VertexMerger merger;
    std::vector<int> cycle;
    for (const auto& v : poly) {
        int id = merger.add(v);
        if (cycle.empty() || cycle.back() != id) cycle.push_back(id);
    }
    while (cycle.size() >= 2 && cycle.front() == cycle.back()) cycle.pop_back();

    ConvexCell out;
    out.dim = 2;
    if (cycle.size() < 3) return out;
    out.vertices.reserve(cycle.size());
    for (int id : cycle) out.vertices.push_back(merger.verts[id]);
    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
        std::size_t j = (i + 1) % out.vertices.size();
        Vec3 a = out.vertices[i], b = out.vertices[j];
        double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (len < kDegenerateTol) continue;
        Vec3 nrm{(b[1] - a[1]) / len, -(b[0] - a[0]) / len, 0.0};
        out.faces.push_back({{static_cast<int>(i), static_cast<int>(j)}, nrm, {}});
    }
    return out;
}

ConvexCell clip_cell_3d(const ConvexCell& cell, const Vec3& n, double c) {
    double nn = norm3(n);
    Vec3 nu{n[0] / nn, n[1] / nn, n[2] / nn};

    VertexMerger merger;
    ConvexCell out;
    out.dim = 3;
    std::vector<int> cap;  // vertices lying on the clip plane

    for (const auto& face : cell.faces) {
        std::vector<int> kept;
        const std::size_t m = face.vertices.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec3& a = cell.vertices[face.vertices[i]];
            const Vec3& b = cell.vertices[face.vertices[(i + 1) % m]];
            double fa = dot3(n, a) - c;
            double fb = dot3(n, b) - c;
            if (fa <= kMergeTol) kept.push_back(merger.add(a));
            if ((fa < -kMergeTol && fb > kMergeTol) || (fa > kMergeTol && fb < -kMergeTol))
                kept.push_back(merger.add(lerp_plane(a, b, fa, fb)));
        }
        std::vector<int> cyc;
        for (int id : kept)
            if (cyc.empty() || cyc.back() != id) cyc.push_back(id);
        while (cyc.size() >= 2 && cyc.front() == cyc.back()) cyc.pop_back();
        if (cyc.size() < 3) continue;
        out.faces.push_back({cyc, face.normal, face.tag});
        for (int id : cyc)
            if (std::abs(dot3(n, merger.verts[id]) - c) <= 10 * kMergeTol) cap.push_back(id);
    }

    // Assemble the cap polygon: convexity lets us order its vertices by angle
    // around the centroid within the plane.
    std::sort(cap.begin(), cap.end());
    cap.erase(std::unique(cap.begin(), cap.end()), cap.end());
    if (cap.size() >= 3) {
        Vec3 ctr{0, 0, 0};
        for (int id : cap)
            for (int k = 0; k < 3; ++k) ctr[k] += merger.verts[id][k];
        for (int k = 0; k < 3; ++k) ctr[k] /= static_cast<double>(cap.size());
        Vec3 ref{1, 0, 0};
        if (std::abs(nu[0]) > 0.9) ref = {0, 1, 0};
        Vec3 e1 = cross3(nu, ref);
        double e1n = norm3(e1);
        e1 = {e1[0] / e1n, e1[1] / e1n, e1[2] / e1n};
        Vec3 e2 = cross3(nu, e1);
        std::sort(cap.begin(), cap.end(), [&](int ia, int ib) {
            Vec3 a, b;
            for (int k = 0; k < 3; ++k) {
                a[k] = merger.verts[ia][k] - ctr[k];
                b[k] = merger.verts[ib][k] - ctr[k];
            }
            return std::atan2(dot3(a, e2), dot3(a, e1)) < std::atan2(dot3(b, e2), dot3(b, e1));
        });
        // Orient CCW seen from outside (area vector along +nu).
        ConvexCell probe;
        probe.dim = 3;
        probe.vertices = merger.verts;
        Face capface{cap, nu, {}};
        Vec3 av{0, 0, 0};
        const Vec3& v0 = merger.verts[cap[0]];
        for (std::size_t i = 1; i + 1 < cap.size(); ++i) {
            Vec3 e1v, e2v;
            for (int k = 0; k < 3; ++k) {
                e1v[k] = merger.verts[cap[i]][k] - v0[k];
                e2v[k] = merger.verts[cap[i + 1]][k] - v0[k];
            }
            Vec3 cr = cross3(e1v, e2v);
            for (int k = 0; k < 3; ++k) av[k] += 0.5 * cr[k];
        }
        if (dot3(av, nu) < 0) std::reverse(capface.vertices.begin(), capface.vertices.end());
        if (norm3(av) >= kDegenerateTol) out.faces.push_back(std::move(capface));
    }

    if (out.faces.size() < 4) return ConvexCell{3, {}, {}};
    // Compact to referenced vertices.
    std::vector<int> remap(merger.verts.size(), -1);
    for (const auto& f : out.faces)
        for (int id : f.vertices)
            if (remap[static_cast<std::size_t>(id)] < 0) {
                remap[static_cast<std::size_t>(id)] = static_cast<int>(out.vertices.size());
                out.vertices.push_back(merger.verts[static_cast<std::size_t>(id)]);
            }
    for (auto& f : out.faces)
        for (int& id : f.vertices) id = remap[static_cast<std::size_t>(id)];
    return out;
}

}  // namespace

ConvexCell clip_cell(const ConvexCell& cell, const Vec3& n, double c) {
    if (cell.vertices.empty()) return cell;
    return cell.dim == 2 ? clip_cell_2d(cell, n, c) : clip_cell_3d(cell, n, c);
}

ConvexCell clip_cube(const Direction& sigma, double r) {
    const int d = sigma.dim();
    if (d != 2 && d != 3)
        throw std::invalid_argument("clip_cube: only dimensions 2 and 3 are supported");
    if (r < 0) throw std::invalid_argument("clip_cube: r must be >= 0");

    Vec3 n{sigma[0], sigma[1], d == 3 ? sigma[2] : 0.0};
    ConvexCell cell = clip_cell(make_cube_cell(d, 1.0), n, r);

    // Re-derive tags: a face in the cutting hyperplane is Cut, a face in a
    // cube facet is Cube(axis, side). Cut wins when the plane coincides with
    // a facet.
    for (auto& face : cell.faces) {
        bool on_cut = true;
        for (int id : face.vertices)
            on_cut = on_cut && std::abs(dot3(n, cell.vertices[id]) - r) <= 1e-9;
        if (on_cut && dot3(face.normal, n) > 0.5) {
            face.tag = {FaceTag::Kind::Cut, -1, 0};
            face.normal = n;
            continue;
        }
        face.tag = {FaceTag::Kind::Plane, -1, 0};
        for (int axis = 0; axis < d && face.tag.kind == FaceTag::Kind::Plane; ++axis) {
            for (int side = -1; side <= 1; side += 2) {
                bool on = true;
                for (int id : face.vertices)
                    on = on && std::abs(cell.vertices[id][axis] - side) <= 1e-9;
                if (on) {
                    face.tag = {FaceTag::Kind::Cube, axis, side};
                    break;
                }
            }
        }
    }
    return cell;
}

namespace {

// Volume of {x in [-1,1]^k : a.x <= r} for strictly positive a, scaled by
// 2^{d-k} for the dropped zero components: map to the unit cube, then the
// standard inclusion-exclusion formula
//   2^d / (k! prod a_i) * sum_S (-1)^{|S|} max(b - sum_{i in S} a_i, 0)^k,
// b = (r + sum a_i)/2.
double inclusion_exclusion_volume(const std::vector<double>& a, double r, int d) {
    const int k = static_cast<int>(a.size());
    if (k > 30) throw ResourceError("cut_volume: inclusion-exclusion limited to 30 nonzero components");
    KahanSum asum_acc;
    for (double ai : a) asum_acc.add(ai);
    const double asum = asum_acc.value();
    const double full = std::ldexp(1.0, d);
    if (r >= asum) return full;

    const double b = 0.5 * (r + asum);
    KahanSum total;
    const std::uint32_t subsets = 1u << k;
    for (std::uint32_t S = 0; S < subsets; ++S) {
        KahanSum ssum;
        for (int i = 0; i < k; ++i)
            if (S & (1u << i)) ssum.add(a[static_cast<std::size_t>(i)]);
        double base = b - ssum.value();
        if (base <= 0.0) continue;
        double term = std::pow(base, k);
        total.add(std::popcount(S) % 2 == 0 ? term : -term);
    }
    double prod = 1.0;
    for (double ai : a) prod *= ai;
    double vol = std::ldexp(total.value(), d) / (factorial(k) * prod);
    return std::clamp(vol, 0.0, full);
}

}  // namespace

double cut_volume(const Direction& sigma, double r) {
    if (!(r >= 0)) throw std::invalid_argument("cut_volume: r must be >= 0");
    const int d = sigma.dim();

    // Reflect to nonnegative components and drop near-zero ones (each dropped
    // coordinate is a clean factor 2, already inside the 2^d scaling).
    std::vector<double> a;
    a.reserve(static_cast<std::size_t>(d));
    for (double s : sigma.components()) {
        double v = std::abs(s);
        if (v >= 1e-12) a.push_back(v);
    }
    if (a.empty()) return std::ldexp(1.0, d);
    std::sort(a.begin(), a.end());

    // Symmetric declustering of near-equal components. Zero-mean offsets keep
    // sum(a) fixed, so the leading perturbation error cancels and the value
    // moves by O(eps^2) only.
    bool perturbed = false;
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i + 1;
        while (j < a.size() && a[j] - a[j - 1] < 1e-9) ++j;
        std::size_t c = j - i;
        if (c >= 2) {
            perturbed = true;
            double step = 2e-10;
            double mid = 0.5 * static_cast<double>(c - 1);
            for (std::size_t t = 0; t < c; ++t)
                a[i + t] += (static_cast<double>(t) - mid) * step;
        }
        i = j;
    }

    double vol = inclusion_exclusion_volume(a, r, d);
    if (perturbed && d <= 3) {
        double ref = cell_volume(clip_cube(sigma, r));
        if (std::abs(vol - ref) > 1e-9 * std::max(1.0, std::abs(ref))) vol = ref;
    }
    return vol;
}

std::pair<Direction, long long> canonical_direction(const Direction& sigma) {
    std::vector<double> c(sigma.components());
    int zeros = 0;
    for (double& x : c) {
        x = std::abs(x);
        if (x < 1e-12) {
            x = 0.0;
            ++zeros;
        }
    }
    std::sort(c.begin(), c.end(), std::greater<>());
    const int d = sigma.dim();
    const int k = d - zeros;
    long long mult = 1LL << k;
    for (int i = 2; i <= d; ++i) mult *= i;
    for (int i = 2; i <= zeros; ++i) mult /= i;
    return {Direction(std::move(c)), mult};
}

double sphere_area(int d) {
    if (d < 2) throw std::invalid_argument("sphere_area: d must be >= 2");
    return 2.0 * std::pow(std::acos(-1.0), 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace halfcube::geom
