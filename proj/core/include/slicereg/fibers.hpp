#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slicereg/slicefn.hpp"

namespace slicereg {

// The 2-sphere alpha + J beta, J ranging over all imaginary units.
struct SphereRecord {
    double alpha = 0.0, beta = 0.0;
};

// A wing of f: the 2-dimensional fiber {alpha + phi(z) beta} over a value c
// with N(f - c) identically zero.
struct Wing {
    Quaternion value;
    // Spheres where the wing degenerates (f'_s = 0, whole sphere in the fiber).
    std::vector<SphereRecord> degenerate_spheres;
};

struct FiberReport {
    Quaternion value;
    bool whole_domain = false;  // f constant equal to c
    std::vector<double> real_points;
    std::vector<SphereRecord> spheres;   // whole spheres contained in the fiber
    std::vector<Quaternion> isolated;    // isolated fiber points
    std::optional<Wing> wing;            // present iff N(f - c) vanishes identically
};

// True iff the normal function of f - c vanishes identically (exact
// coefficient test for polynomial stems, dense sampling otherwise).
bool normal_vanishes(const SliceFunction& f, const Quaternion& c);

FiberReport solve_fiber(const SliceFunction& f, const Quaternion& c, std::size_t grid_n = 400,
                        std::uint64_t seed = 42);

// Unit phi(z) = (c - F1(z)) F2(z)^-1 selecting the fiber point of c on the
// sphere over z; throws where F2(z) = 0 or the quotient is not a unit.
ImaginaryUnit wing_phi(const SliceFunction& f, const Quaternion& c, Complex z);
// The fiber point alpha + phi(z) beta itself.
Quaternion wing_point(const SliceFunction& f, const Quaternion& c, Complex z);

struct WingCircle {
    Quaternion center;
    double radius = 0.0;
    Quaternion u, v;  // orthonormal; c(theta) = center + (u cos(theta) + v sin(theta)) radius
};

enum class WingSetKind { Empty, One, Two, Circle, WholeDomain };

struct WingSetReport {
    WingSetKind kind = WingSetKind::Empty;
    std::vector<Quaternion> values;  // representative wing values
    std::optional<WingCircle> circle;
};

// Wing values of f: harvested from slice samples, refined on the vanishing
// system of the normal function, then classified (0, 1, 2, a circle, or the
// whole codomain when f is a non-constant slice constant).
WingSetReport find_wings(const SliceFunction& f, std::uint64_t seed = 42);

// g(x) = c + (x - r)(f(x) - c): slice regular with g = f on C_J where
// J = phi(z_r)... r real; used to select a single wing through a point.
SliceFunction wing_selection(const SliceFunction& f, const Quaternion& c, double r);

// f with F1 = (g + gc)/2, F2 = -(i/2)(g - gc), gc(z) = -1/conj(g(z)): a slice
// regular function with normal identically -1, whose wing values form the
// unit circle of Span(j, k). dg is the derivative of g.
SliceFunction schwarz_wing_function(ComplexMap g, ComplexMap dg, SymmetricDomain domain);

// Total multiplicity of y as a solution of f(x) = f(y) for polynomial f:
// largest s with Delta_y^s | N(f - f(y)), plus the cofactor of Delta_y^s.
struct MultiplicityReport {
    int multiplicity = 0;
    std::vector<Quaternion> cofactor;
};
MultiplicityReport total_multiplicity(const SliceFunction& f, const Quaternion& y);

}  // namespace slicereg
