#include "slicereg/jacobian.hpp"

#include <cmath>

namespace slicereg {

namespace {

std::array<Quaternion, 4> adapted_basis(const Quaternion& y) {
    const SliceCoordinates sc = decompose(y);
    const Quaternion I = sc.J.value();
    // Second unit: the canonical direction least aligned with I, ties broken
    // in the order i, j, k, then Gram-Schmidt.
    const std::array<Quaternion, 3> cand = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    std::size_t best = 0;
    double best_abs = std::fabs(dot(I, cand[0]));
    for (std::size_t c = 1; c < cand.size(); ++c) {
        const double a = std::fabs(dot(I, cand[c]));
        if (a < best_abs - 1e-15) best = c, best_abs = a;
    }
    Quaternion J = cand[best] - I * dot(I, cand[best]);
    J = J / J.norm();
    return {Quaternion(1.0), I, J, I * J};
}

Eigen::Vector4d coords(const Quaternion& v, const std::array<Quaternion, 4>& basis) {
    Eigen::Vector4d c;
    for (int n = 0; n < 4; ++n) c[n] = dot(v, basis[static_cast<std::size_t>(n)]);
    return c;
}

}  // namespace

JacobianMatrix jacobian_matrix(const SliceFunction& f, const Quaternion& y) {
    JacobianMatrix out;
    out.basis = adapted_basis(y);
    const Quaternion d = f.slice_derivative_at(y);
    const Quaternion s = f.spherical_derivative_at(y);
    const Eigen::Vector4d q = coords(d, out.basis);
    const Eigen::Vector4d p = coords(out.basis[2] * s, out.basis);
    out.m << q[0], -q[1], p[0], -p[1],
             q[1],  q[0], p[1],  p[0],
             q[2], -q[3], p[2], -p[3],
             q[3],  q[2], p[3],  p[2];
    return out;
}

double jacobian_det(const SliceFunction& f, const Quaternion& y) {
    const Quaternion d = f.slice_derivative_at(y);
    const SliceCoordinates sc = decompose(y);
    if (sc.is_real) {
        const double n2 = d.norm2();
        return n2 * n2;
    }
    const Quaternion s = f.spherical_derivative_at(y);
    const double a = dot(d, s);
    const double b = dot(d, sc.J.value() * s);
    return a * a + b * b;
}

Quaternion differential_apply(const SliceFunction& f, const Quaternion& y, const Quaternion& v) {
    const JacobianMatrix jm = jacobian_matrix(f, y);
    const Eigen::Vector4d w = jm.m * coords(v, jm.basis);
    Quaternion out;
    for (int n = 0; n < 4; ++n) out = out + jm.basis[static_cast<std::size_t>(n)] * w[n];
    return out;
}

int jacobian_rank(const SliceFunction& f, const Quaternion& y, double rel_tol) {
    const JacobianMatrix jm = jacobian_matrix(f, y);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(jm.m);
    const Eigen::Vector4d sv = svd.singularValues();
    if (sv[0] <= 0.0) return 0;
    int rank = 0;
    for (int n = 0; n < 4; ++n)
        if (sv[n] > rel_tol * sv[0]) ++rank;
    return rank;
}

Eigen::Matrix4d fd_jacobian(const SliceFunction& f, const Quaternion& y,
                            const std::array<Quaternion, 4>& basis, double step) {
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) {
        const Quaternion b = basis[static_cast<std::size_t>(c)];
        const Quaternion d = (f.eval(y + b * step) - f.eval(y - b * step)) / (2.0 * step);
        m.col(c) = coords(d, basis);
    }
    return m;
}

}  // namespace slicereg
