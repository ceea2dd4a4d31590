#include "slicereg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace slicereg {

namespace {

BoundingBox default_box_for(SymmetricDomain::Shape shape, double p0, double p1, double p2) {
    BoundingBox b;
    switch (shape) {
        case SymmetricDomain::Shape::Disk:
            b = {p0 - p1, p0 + p1, 0.0, p1};
            break;
        case SymmetricDomain::Shape::Annulus:
            if (std::isfinite(p2)) b = {p0 - p2, p0 + p2, 0.0, p2};
            break;
        case SymmetricDomain::Shape::Rectangle:
            b = {p0, p1, 0.0, p2};
            break;
        case SymmetricDomain::Shape::Plane:
            break;  // keep the default [-5,5] x [0,5]
    }
    return b;
}

}  // namespace

SymmetricDomain SymmetricDomain::disk(double center, double radius, bool minus_reals) {
    if (radius <= 0.0) throw std::invalid_argument("disk: radius must be positive");
    SymmetricDomain d;
    d.shape_ = Shape::Disk;
    d.minus_reals_ = minus_reals;
    d.p0_ = center;
    d.p1_ = radius;
    d.kind_ = minus_reals ? DomainKind::ProductDomain : DomainKind::SliceDomain;
    d.bbox_ = default_box_for(d.shape_, d.p0_, d.p1_, d.p2_);
    return d;
}

SymmetricDomain SymmetricDomain::annulus(double center, double r_in, double r_out,
                                         bool minus_reals) {
    if (r_in < 0.0 || r_out <= r_in) throw std::invalid_argument("annulus: need 0 <= r_in < r_out");
    SymmetricDomain d;
    d.shape_ = Shape::Annulus;
    d.minus_reals_ = minus_reals;
    d.p0_ = center;
    d.p1_ = r_in;
    d.p2_ = r_out;
    d.kind_ = minus_reals ? DomainKind::ProductDomain : DomainKind::SliceDomain;
    d.bbox_ = default_box_for(d.shape_, d.p0_, d.p1_, d.p2_);
    return d;
}

SymmetricDomain SymmetricDomain::rectangle(double alpha_min, double alpha_max, double beta_max,
                                           bool minus_reals) {
    if (alpha_max <= alpha_min || beta_max <= 0.0)
        throw std::invalid_argument("rectangle: empty shape");
    SymmetricDomain d;
    d.shape_ = Shape::Rectangle;
    d.minus_reals_ = minus_reals;
    d.p0_ = alpha_min;
    d.p1_ = alpha_max;
    d.p2_ = beta_max;
    d.kind_ = minus_reals ? DomainKind::ProductDomain : DomainKind::SliceDomain;
    d.bbox_ = default_box_for(d.shape_, d.p0_, d.p1_, d.p2_);
    return d;
}

SymmetricDomain SymmetricDomain::whole_plane(bool minus_reals) {
    SymmetricDomain d;
    d.shape_ = Shape::Plane;
    d.minus_reals_ = minus_reals;
    d.kind_ = minus_reals ? DomainKind::ProductDomain : DomainKind::SliceDomain;
    return d;
}

double SymmetricDomain::diameter() const {
    switch (shape_) {
        case Shape::Disk:
            return 2.0 * p1_;
        case Shape::Annulus:
            if (std::isfinite(p2_)) return 2.0 * p2_;
            break;
        case Shape::Rectangle:
            return std::hypot(p1_ - p0_, 2.0 * p2_);
        case Shape::Plane:
            break;
    }
    return std::hypot(bbox_.alpha_max - bbox_.alpha_min, 2.0 * bbox_.beta_max);
}

double SymmetricDomain::boundary_margin() const { return 1e-3 * diameter(); }

double SymmetricDomain::interior_distance(Complex z) const {
    double d = std::numeric_limits<double>::infinity();
    const double r = std::abs(z - Complex(p0_, 0.0));
    switch (shape_) {
        case Shape::Disk:
            d = p1_ - r;
            break;
        case Shape::Annulus:
            d = std::min(r - p1_, std::isfinite(p2_) ? p2_ - r
                                                     : std::numeric_limits<double>::infinity());
            break;
        case Shape::Rectangle:
            d = std::min({z.real() - p0_, p1_ - z.real(), p2_ - std::fabs(z.imag())});
            break;
        case Shape::Plane:
            break;
    }
    if (minus_reals_) d = std::min(d, std::fabs(z.imag()));
    return d;
}

bool SymmetricDomain::contains_complex(Complex z) const {
    if (minus_reals_ && z.imag() == 0.0) return false;
    return interior_distance(z) > 0.0;
}

bool SymmetricDomain::contains_quaternion(const Quaternion& q) const {
    return contains_complex(Complex(q.real(), q.imag_norm()));
}

std::vector<Complex> SymmetricDomain::sample_d_plus(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample_d_plus: n must be >= 1");
    const double delta = boundary_margin();
    const double a0 = bbox_.alpha_min, a1 = bbox_.alpha_max;
    const double b0 = std::max(bbox_.beta_min, 0.0), b1 = bbox_.beta_max;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.45, 0.45);

    std::vector<Complex> out;
    out.reserve(n);
    // Grid refinement until enough interior samples are collected.
    for (int level = 0; level < 6 && out.size() < n; ++level) {
        out.clear();
        const std::size_t m =
            static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) << level;
        const double da = (a1 - a0) / static_cast<double>(m);
        const double db = (b1 - b0) / static_cast<double>(m);
        for (std::size_t ia = 0; ia < m && out.size() < n; ++ia) {
            for (std::size_t ib = 0; ib < m && out.size() < n; ++ib) {
                const double alpha = a0 + (ia + 0.5 + jitter(rng)) * da;
                const double beta = b0 + (ib + 0.5 + jitter(rng)) * db;
                const Complex z(alpha, beta);
                if (beta > 0.0 && interior_distance(z) >= delta) out.push_back(z);
            }
        }
    }
    if (out.empty()) throw std::runtime_error("sample_d_plus: empty domain (no sample found)");
    return out;
}

}  // namespace slicereg
