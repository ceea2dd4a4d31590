#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slicereg/fibers.hpp"
#include "slicereg/slicefn.hpp"

namespace slicereg {

// Membership in the singular set N_f = {y : det(J_f(y)) = 0}, tested through
// the closed form of the determinant: at non-real y both <df/dx, f'_s> and
// <df/dx, I_y f'_s> must vanish, at real y the slice derivative must vanish.
bool in_singular_set(const SliceFunction& f, const Quaternion& y, double tol = 1e-8);

// Degenerate set D_f = zeros of the spherical derivative (union of spheres
// alpha + beta S^2); a circular curve of spheres when f is slice preserving.
enum class DegenerateKind { Empty, Spheres, Curve };
struct DegenerateSet {
    DegenerateKind kind = DegenerateKind::Empty;
    std::vector<SphereRecord> spheres;   // isolated spheres
    std::vector<Complex> curve_points;   // samples along the curve in D+
    int dim() const {
        switch (kind) {
            case DegenerateKind::Empty: return -1;
            case DegenerateKind::Spheres: return 2;
            case DegenerateKind::Curve: return 3;
        }
        return -1;
    }
};
DegenerateSet degenerate_set(const SliceFunction& f, std::size_t grid_n = 200,
                             std::uint64_t seed = 42);

// Intersection of N_f with the sphere alpha + beta S^2 (beta > 0), computed
// from the affine dependence of (df/dx) conj(f'_s) on the unit J.
enum class SphereSectionKind { Empty, OnePoint, TwoPoints, Circle, WholeSphere };
struct SphereSection {
    SphereSectionKind kind = SphereSectionKind::Empty;
    std::vector<Quaternion> units;  // the solution units J (One/Two)
    // Circle case: {J in S^2 : <axis, J> = offset}.
    Quaternion circle_axis;
    double circle_offset = 0.0;
};
SphereSection sphere_section(const SliceFunction& f, double alpha, double beta,
                             double tol = 1e-9);

// Dimension of N_f \ (D_f union W_f): 2 with a witness point, or -1 (empty).
// Searches slice by slice over a fixed set of units plus the preserved slice.
struct ExtraSingularReport {
    int dim = -1;
    std::optional<Quaternion> witness;
};
ExtraSingularReport extra_singular_dimension(const SliceFunction& f, const DegenerateSet& deg,
                                             const WingSetReport& wings,
                                             std::uint64_t seed = 42);

// The triple (d_f, w_f, m_f): dimensions of the degenerate set, the wing set,
// and the rest of the singular set, each -1 when empty.
struct DimensionTriple {
    int d = -1, w = -1, m = -1;
};
DimensionTriple dimension_triple(const SliceFunction& f, std::uint64_t seed = 42);

// Whether a triple appears in the classification for the given domain kind.
bool admissible_triple(const DimensionTriple& t, DomainKind kind);

}  // namespace slicereg
