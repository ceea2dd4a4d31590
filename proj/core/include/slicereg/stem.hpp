#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "slicereg/domain.hpp"
#include "slicereg/quaternion.hpp"

namespace slicereg {

// Element of H (x) C, written F1 + iota F2.
struct StemValue {
    Quaternion f1, f2;

    StemValue operator+(const StemValue& o) const { return {f1 + o.f1, f2 + o.f2}; }
    StemValue operator-(const StemValue& o) const { return {f1 - o.f1, f2 - o.f2}; }
    // Product in H (x) C: (x + iota y)(x' + iota y') = (xx'-yy') + iota(xy'+yx').
    StemValue operator*(const StemValue& o) const {
        return {f1 * o.f1 - f2 * o.f2, f1 * o.f2 + f2 * o.f1};
    }
};

class StemFunction;
using StemPtr = std::shared_ptr<const StemFunction>;

using ComplexMap = std::function<Complex(Complex)>;

// Holomorphic stem function F = F1 + iota F2 : D -> H (x) C, even-odd in beta.
// Nodes defined only on D+ (slice constants, two-slice data) extend to D- by
// the mirror rule F1(conj z) = F1(z), F2(conj z) = -F2(z).
class StemFunction {
  public:
    virtual ~StemFunction() = default;

    virtual StemValue eval(Complex z) const = 0;

    // Extended F2/beta: for beta != 0 it is F2(z)/beta, on the real axis the
    // limit dF2/dbeta (exact for polynomials and real-holomorphic nodes).
    virtual Quaternion f2_hat(Complex z) const = 0;

    // Complex derivative dF/dz = dF/dalpha.
    virtual StemPtr derivative() const = 0;

    // F^c(z) = conj(F1(z)) + iota conj(F2(z)).
    virtual StemPtr conjugate() const = 0;

    // Non-null iff this stem is (exactly) a polynomial sum_n z^n a_n.
    virtual const std::vector<Quaternion>* poly_coeffs() const { return nullptr; }
};

// --- constructors -----------------------------------------------------------

// Polynomial stem F(z) = sum_n (alpha + iota beta)^n a_n.
StemPtr make_polynomial(std::vector<Quaternion> coeffs);

// Locally constant stem on a product domain: (c1, c2) on D+, even-odd on D-.
StemPtr make_slice_constant(const Quaternion& c1, const Quaternion& c2);

// eta(x) = (1 - I_x i)/2, the basic idempotent slice constant.
StemPtr make_eta();

// Stem of the slice regular f on a product domain determined by its values on
// the two half-slices of C_i: f(alpha + i beta) = upper(alpha + i beta) and
// f(alpha - i beta) = lower(alpha + i beta) for beta > 0. upper must be
// holomorphic and lower anti-holomorphic for the stem to be holomorphic.
// d_upper / d_lower are the alpha-derivatives; when absent, derivative()
// falls back to central finite differences with one Richardson step.
StemPtr make_two_slices(ComplexMap upper, ComplexMap lower, ComplexMap d_upper = nullptr,
                        ComplexMap d_lower = nullptr);

// Stem of a slice-preserving function from a holomorphic h with
// h(conj z) = conj(h(z)): F1 = Re h, F2 = Im h.
StemPtr make_real_holomorphic(ComplexMap h, ComplexMap dh = nullptr, ComplexMap d2h = nullptr);

// --- algebra ----------------------------------------------------------------

StemPtr stem_add(StemPtr a, StemPtr b);
StemPtr stem_sub(StemPtr a, StemPtr b);
// Pointwise product in H (x) C; collapses to coefficient convolution when both
// operands are polynomials.
StemPtr stem_mul(StemPtr a, StemPtr b);
// Right scale F a.
StemPtr stem_rscale(StemPtr a, const Quaternion& q);
// Stem of the slice reciprocal f^{-.}, evaluated pointwise via the normal stem.
StemPtr stem_reciprocal(StemPtr a);

// Central-difference d/dalpha wrapper (step 1e-6 * max(1,|z|), one Richardson
// level); used by nodes without an exact derivative rule.
StemPtr stem_fd_derivative(StemPtr a);

// --- polynomial helpers -----------------------------------------------------

// Coefficients of the classical product, c_n = sum_{m+l=n} a_m b_l.
std::vector<Quaternion> poly_convolve(const std::vector<Quaternion>& a,
                                      const std::vector<Quaternion>& b);

std::vector<Quaternion> poly_conj(const std::vector<Quaternion>& a);

// Divide p by the monic real quadratic x^2 - 2re x + n2 (the characteristic
// polynomial of y with re = Re(y), n2 = |y|^2). Returns quotient; remainder is
// degree <= 1 with coefficients rem0 + rem1 x.
struct PolyQuadDivision {
    std::vector<Quaternion> quotient;
    Quaternion rem0, rem1;
};
PolyQuadDivision poly_divide_quadratic(const std::vector<Quaternion>& p, double re, double n2);

}  // namespace slicereg
