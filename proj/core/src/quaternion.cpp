#include "slicereg/quaternion.hpp"

#include <ostream>

namespace slicereg {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

ImaginaryUnit::ImaginaryUnit(const Quaternion& q) {
    const double n = q.imag_norm();
    if (n <= kUnitTol * (1.0 + q.norm()))
        throw std::domain_error("ImaginaryUnit: imaginary part is (near) zero");
    if (std::fabs(q.w) > 1e-9 * (1.0 + n))
        throw std::domain_error("ImaginaryUnit: real part is not zero");
    unit_ = Quaternion{0, q.x / n, q.y / n, q.z / n};
}

SliceCoordinates decompose(const Quaternion& q) {
    const double beta = q.imag_norm();
    if (beta <= real_axis_eps(q)) {
        return SliceCoordinates{q.w, 0.0, ImaginaryUnit::canonical(), true};
    }
    return SliceCoordinates{q.w, beta, ImaginaryUnit(q.imag()), false};
}

Quaternion project(const Quaternion& q, const ImaginaryUnit& I) {
    // {1, I} is an orthonormal pair of R^4.
    const Quaternion& u = I.value();
    return Quaternion(q.w) + u * dot(q, u);
}

Quaternion project_perp(const Quaternion& q, const ImaginaryUnit& I) {
    return q - project(q, I);
}

HermitianParts hermitian_product(const Quaternion& u, const Quaternion& v, const ImaginaryUnit& I) {
    return HermitianParts{dot(u, v), dot(I.value() * u, v)};
}

Quaternion characteristic_poly_eval(const Quaternion& y, const Quaternion& x) {
    return x * x - x * (2.0 * y.real()) + Quaternion(y.norm2());
}

}  // namespace slicereg
