#pragma once

#include <Eigen/Dense>
#include <array>

#include "slicereg/slicefn.hpp"

namespace slicereg {

// Real differential of f at y, expressed in the adapted orthonormal basis
// {1, I, J, IJ} where I = I_y (canonical i at real y) and J is chosen
// deterministically orthogonal to I.
struct JacobianMatrix {
    Eigen::Matrix4d m;
    std::array<Quaternion, 4> basis;  // {1, I, J, IJ}
};

JacobianMatrix jacobian_matrix(const SliceFunction& f, const Quaternion& y);

// det(J_f(y)) via the closed form <df/dx, f'_s>^2 + <df/dx, I f'_s>^2
// (|df/dx|^4 at real points); always >= 0.
double jacobian_det(const SliceFunction& f, const Quaternion& y);

// Apply the differential to a tangent vector v (standard coordinates).
Quaternion differential_apply(const SliceFunction& f, const Quaternion& y, const Quaternion& v);

// Rank of the differential; always in {0, 2, 4}. Singular values below
// rel_tol * sigma_max count as zero.
int jacobian_rank(const SliceFunction& f, const Quaternion& y, double rel_tol = 1e-8);

// Central finite differences of eval along the given basis directions,
// components expressed in that same basis; oracle for jacobian_matrix.
Eigen::Matrix4d fd_jacobian(const SliceFunction& f, const Quaternion& y,
                            const std::array<Quaternion, 4>& basis, double step);

}  // namespace slicereg
