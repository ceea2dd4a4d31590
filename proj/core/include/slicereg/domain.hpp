#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "slicereg/quaternion.hpp"

namespace slicereg {

using Complex = std::complex<double>;

struct BoundingBox {
    double alpha_min = -5.0;
    double alpha_max = 5.0;
    double beta_min = 0.0;
    double beta_max = 5.0;
};

enum class DomainKind { SliceDomain, ProductDomain };

// Conjugation-symmetric open subset D of C together with its circularization.
// Unbounded shapes carry a bounding box used by all sampling operations.
class SymmetricDomain {
  public:
    enum class Shape { Disk, Annulus, Rectangle, Plane };

    static SymmetricDomain disk(double center, double radius, bool minus_reals = false);
    static SymmetricDomain annulus(double center, double r_in, double r_out,
                                   bool minus_reals = false);
    static SymmetricDomain rectangle(double alpha_min, double alpha_max, double beta_max,
                                     bool minus_reals = false);
    static SymmetricDomain whole_plane(bool minus_reals = false);

    // Commonly used symmetric domains.
    static SymmetricDomain quaternions() { return whole_plane(false); }           // H
    static SymmetricDomain quaternions_minus_reals() { return whole_plane(true); }  // H \ R
    static SymmetricDomain quaternions_minus_origin() {  // H \ {0}
        return annulus(0.0, 0.0, std::numeric_limits<double>::infinity(), false);
    }

    Shape shape() const { return shape_; }
    bool minus_reals() const { return minus_reals_; }
    DomainKind kind() const { return kind_; }
    bool is_product_domain() const { return kind_ == DomainKind::ProductDomain; }

    const BoundingBox& bbox() const { return bbox_; }
    void set_bbox(const BoundingBox& b) { bbox_ = b; }

    double diameter() const;          // clipped to the bounding box when unbounded
    double boundary_margin() const;   // delta used by sampling

    bool contains_complex(Complex z) const;
    bool contains_complex(double alpha, double beta) const {
        return contains_complex(Complex(alpha, beta));
    }
    bool contains_quaternion(const Quaternion& q) const;

    // Quasi-uniform jittered grid over D+ = {alpha + i beta in D : beta > 0},
    // every sample at distance >= boundary_margin() from the boundary.
    std::vector<Complex> sample_d_plus(std::size_t n, std::uint64_t seed = 42) const;

    // Signed distance from z to the boundary of the shape (positive inside).
    double interior_distance(Complex z) const;

    double param0() const { return p0_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }

  private:
    SymmetricDomain() = default;

    Shape shape_ = Shape::Plane;
    bool minus_reals_ = false;
    DomainKind kind_ = DomainKind::SliceDomain;
    BoundingBox bbox_;
    // Shape parameters: Disk (center, radius), Annulus (center, r_in, r_out),
    // Rectangle (alpha_min, alpha_max, beta_max).
    double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;
};

}  // namespace slicereg
