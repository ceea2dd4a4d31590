#pragma once

#include <cmath>
#include <iosfwd>
#include <stdexcept>

namespace slicereg {

// Quaternion q = w + x i + y j + z k.
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quaternion(double real) : w(real) {}

    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    // Hamilton product (non-commutative).
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }

    constexpr double real() const { return w; }
    constexpr Quaternion imag() const { return {0, x, y, z}; }
    double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

    Quaternion inverse() const {
        const double n2 = norm2();
        if (n2 == 0.0) throw std::domain_error("Quaternion::inverse: zero quaternion");
        return conj() / n2;
    }
};

// Euclidean scalar product of u, v as vectors of R^4.
constexpr double dot(const Quaternion& u, const Quaternion& v) {
    return u.w * v.w + u.x * v.x + u.y * v.y + u.z * v.z;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

// Unit imaginary quaternion J with J^2 = -1. Construction normalizes the
// imaginary part and rejects inputs whose imaginary part is near zero.
class ImaginaryUnit {
  public:
    static constexpr double kUnitTol = 1e-12;

    explicit ImaginaryUnit(const Quaternion& q);

    const Quaternion& value() const { return unit_; }
    operator const Quaternion&() const { return unit_; }

    static ImaginaryUnit canonical() { return ImaginaryUnit(Quaternion::i()); }

  private:
    Quaternion unit_;
};

// x = alpha + J beta with beta = |Im(x)| >= 0. When x is real the flag is set
// and J is the canonical unit i.
struct SliceCoordinates {
    double alpha = 0.0;
    double beta = 0.0;
    ImaginaryUnit J;
    bool is_real = false;

    Quaternion recompose() const { return Quaternion(alpha) + J.value() * beta; }
};

// Threshold below which a quaternion is treated as lying on the real axis.
inline double real_axis_eps(const Quaternion& q) { return 1e-12 * (1.0 + q.norm()); }

SliceCoordinates decompose(const Quaternion& q);

// Orthogonal projection of q onto C_I = Span(1, I), and its complement.
Quaternion project(const Quaternion& q, const ImaginaryUnit& I);
Quaternion project_perp(const Quaternion& q, const ImaginaryUnit& I);

// Hermitian product <u,v>_I = pi_I(u conj(v)) split into the Euclidean part
// <u,v> and the fundamental-form part omega_I(u,v) = <Iu,v>.
struct HermitianParts {
    double re = 0.0;  // <u,v>
    double im = 0.0;  // <Iu,v> = omega_I(u,v)
};
HermitianParts hermitian_product(const Quaternion& u, const Quaternion& v, const ImaginaryUnit& I);

// Characteristic polynomial Delta_y(x) = x^2 - 2 Re(y) x + |y|^2.
Quaternion characteristic_poly_eval(const Quaternion& y, const Quaternion& x);

}  // namespace slicereg
