#pragma once

#include <array>
#include <utility>
#include <vector>

#include "halfcube/common.hpp"

namespace halfcube::geom {

using Vec3 = std::array<double, 3>;

inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

// Unit vector on the sphere S^{d-1}; the cut direction.
class Direction {
public:
    explicit Direction(std::vector<double> components);
    static Direction from_angle(double theta);  // d = 2

    int dim() const { return static_cast<int>(comps_.size()); }
    const std::vector<double>& components() const { return comps_; }
    double operator[](int j) const { return comps_[static_cast<std::size_t>(j)]; }
    Direction negated() const;

private:
    std::vector<double> comps_;
};

struct FaceTag {
    enum class Kind { Cut, Cube, Plane };
    Kind kind = Kind::Plane;
    int axis = -1;  // Cube faces only
    int side = 0;   // Cube faces only: +1 or -1
};

struct Face {
    std::vector<int> vertices;  // cyclic; CCW seen from outside (dim 3)
    Vec3 normal{0, 0, 0};       // outward unit normal
    FaceTag tag;
};

// Face complex of a convex polytope in dimension 2 or 3. In dimension 2 the
// vertices form a CCW cycle and each face is an edge {i, i+1}.
struct ConvexCell {
    int dim = 0;
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
};

double face_measure(const ConvexCell& cell, const Face& face);  // edge length / polygon area
Vec3 face_centroid(const ConvexCell& cell, const Face& face);
Vec3 cell_centroid(const ConvexCell& cell);

// Volume from the face complex via the divergence formula
// (1/d) * sum_F (centroid_F . nu_F) * |F|.
double cell_volume(const ConvexCell& cell);

ConvexCell make_cube_cell(int dim, double halfwidth);

// Intersect with the half-space {t : n.t <= c}. Degenerate faces are dropped
// and coincident vertices merged at 1e-12.
ConvexCell clip_cell(const ConvexCell& cell, const Vec3& n, double c);

// Face complex of P_{sigma,r} = [-1,1]^d intersect {t.sigma <= r}, with faces
// tagged Cut (in the cutting hyperplane) or Cube (in a cube facet).
ConvexCell clip_cube(const Direction& sigma, double r);

// Lebesgue measure of P_{sigma,r}, exact closed form in any dimension d >= 2.
double cut_volume(const Direction& sigma, double r);

// Representative of sigma under coordinate permutations and sign flips
// (components sorted descending, nonnegative) plus the orbit weight
// 2^k * d!/z! (k nonzero components, z zero components).
std::pair<Direction, long long> canonical_direction(const Direction& sigma);

// Surface measure of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

}  // namespace halfcube::geom
