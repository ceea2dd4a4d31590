#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "slicereg/domain.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/stem.hpp"

namespace slicereg {

// Structure class of a slice regular function, with the inclusions
// constants < slice constants (SC) < tilde_r < tilde_c and
// slice preserving (real stem) < one-slice preserving (C_J-valued stem).
struct FunctionClass {
    bool constant = false;
    bool slice_constant = false;        // vanishing slice derivative
    bool slice_preserving = false;      // f(C_J) subset C_J for every J
    bool one_slice_preserving = false;  // C_J-valued stem for a single J
    std::optional<ImaginaryUnit> preserved_slice;

    // f = g a + b with g slice preserving (tilde_r) resp. one-slice
    // preserving (tilde_c); a, b are the recovered witnesses.
    bool tilde_r = false;
    bool tilde_c = false;
    Quaternion witness_a, witness_b;

    double max_residual = 0.0;  // largest relative residual among the accepted tests
};

// Slice regular function f = I(F) on the circularization of the stem domain:
// f(alpha + J beta) = F1(alpha + i beta) + J F2(alpha + i beta).
class SliceFunction {
  public:
    SliceFunction(StemPtr stem, SymmetricDomain domain);

    const StemPtr& stem() const { return stem_; }
    const SymmetricDomain& domain() const { return domain_; }

    // Throws std::domain_error outside the domain.
    Quaternion eval(const Quaternion& x) const;
    Quaternion operator()(const Quaternion& x) const { return eval(x); }

    // Slice (Cullen) derivative df/dx, itself slice regular.
    SliceFunction slice_derivative() const;
    Quaternion slice_derivative_at(const Quaternion& x) const;

    // Spherical derivative f'_s(x) = (x - conj(x))^-1 (f(x) - f(conj(x))),
    // extended through the reals on slice domains.
    Quaternion spherical_derivative_at(const Quaternion& x) const;

    SliceFunction conjugate() const;
    // Normal function N(f) = f . f^c (slice product), slice preserving.
    SliceFunction normal() const;
    SliceFunction slice_product(const SliceFunction& other) const;
    SliceFunction operator+(const SliceFunction& other) const;
    SliceFunction operator-(const SliceFunction& other) const;
    // Slice reciprocal f^{-.} = N(f)^{-1} f^c; evaluation throws where N(f)=0.
    SliceFunction reciprocal() const;

    // Sampling-based structure classification; cached after the first call.
    const FunctionClass& classify(std::uint64_t seed = 42) const;

  private:
    StemPtr stem_;
    SymmetricDomain domain_;
    mutable std::shared_ptr<FunctionClass> class_cache_;
};

}  // namespace slicereg
