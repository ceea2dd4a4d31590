#pragma once

// Internal 2D root-finding helpers shared by the fiber and singular-set code.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "slicereg/domain.hpp"

namespace slicereg::detail {

using Fn2 = std::function<Eigen::Vector2d(Complex)>;
using Jac2 = std::function<Eigen::Matrix2d(Complex)>;

struct NewtonResult {
    Complex z;
    bool converged = false;
};

inline NewtonResult newton2(const Fn2& g, const Jac2& jac, Complex z0, int max_iter = 50) {
    NewtonResult out{z0, false};
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::Vector2d r = g(out.z);
        const Eigen::Matrix2d J = jac(out.z);
        const Eigen::Vector2d step = J.fullPivLu().solve(-r);
        if (!step.allFinite()) return out;
        out.z += Complex(step[0], step[1]);
        if (step.norm() < 1e-12 * (1.0 + std::abs(out.z))) {
            out.converged = true;
            return out;
        }
        if (std::abs(out.z) > 1e6) return out;
    }
    return out;
}

// Cell centers of an n x n grid over the bounding box of D+ where obj attains
// a local minimum among the in-domain 4-neighborhood.
inline std::vector<Complex> grid_local_minima(const std::function<double(Complex)>& obj,
                                              const SymmetricDomain& dom, std::size_t n) {
    const BoundingBox& bb = dom.bbox();
    const double b0 = std::max(bb.beta_min, 0.0);
    const double da = (bb.alpha_max - bb.alpha_min) / static_cast<double>(n);
    const double db = (bb.beta_max - b0) / static_cast<double>(n);
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> val(n * n, inf);
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib) {
            const Complex z(bb.alpha_min + (ia + 0.5) * da, b0 + (ib + 0.5) * db);
            if (z.imag() > 0.0 && dom.interior_distance(z) > 0.0) val[ia * n + ib] = obj(z);
        }

    std::vector<Complex> out;
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib) {
            const double v = val[ia * n + ib];
            if (!std::isfinite(v)) continue;
            const bool min_a = (ia == 0 || v <= val[(ia - 1) * n + ib]) &&
                               (ia + 1 == n || v <= val[(ia + 1) * n + ib]);
            const bool min_b = (ib == 0 || v <= val[ia * n + ib - 1]) &&
                               (ib + 1 == n || v <= val[ia * n + ib + 1]);
            if (min_a && min_b)
                out.emplace_back(bb.alpha_min + (ia + 0.5) * da, b0 + (ib + 0.5) * db);
        }
    return out;
}

inline void dedup_points(std::vector<Complex>& pts, double radius) {
    std::vector<Complex> kept;
    for (Complex z : pts) {
        bool dup = false;
        for (Complex w : kept)
            if (std::abs(z - w) < radius * (1.0 + std::abs(z))) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(z);
    }
    pts = std::move(kept);
}

}  // namespace slicereg::detail
