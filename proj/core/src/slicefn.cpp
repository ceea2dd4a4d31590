#include "slicereg/slicefn.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicereg {

namespace {

Eigen::Vector3d imag_vec(const Quaternion& q) { return {q.x, q.y, q.z}; }

Quaternion from_imag_vec(const Eigen::Vector3d& v) { return {0.0, v.x(), v.y(), v.z()}; }

// Deterministic sign convention for an axis vector.
Eigen::Vector3d canonical_axis(Eigen::Vector3d v) {
    int lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    if (v[lead] < 0.0) v = -v;
    return v;
}

}  // namespace

SliceFunction::SliceFunction(StemPtr stem, SymmetricDomain domain)
    : stem_(std::move(stem)), domain_(std::move(domain)) {
    if (!stem_) throw std::invalid_argument("SliceFunction: null stem");
}

Quaternion SliceFunction::eval(const Quaternion& x) const {
    if (!domain_.contains_quaternion(x))
        throw std::domain_error("SliceFunction::eval: point outside domain");
    const SliceCoordinates sc = decompose(x);
    const StemValue v = stem_->eval(Complex(sc.alpha, sc.beta));
    if (sc.is_real) return v.f1;
    return v.f1 + sc.J.value() * v.f2;
}

SliceFunction SliceFunction::slice_derivative() const {
    return SliceFunction(stem_->derivative(), domain_);
}

Quaternion SliceFunction::slice_derivative_at(const Quaternion& x) const {
    return slice_derivative().eval(x);
}

Quaternion SliceFunction::spherical_derivative_at(const Quaternion& x) const {
    if (!domain_.contains_quaternion(x))
        throw std::domain_error("spherical_derivative_at: point outside domain");
    const SliceCoordinates sc = decompose(x);
    return stem_->f2_hat(Complex(sc.alpha, sc.beta));
}

SliceFunction SliceFunction::conjugate() const {
    return SliceFunction(stem_->conjugate(), domain_);
}

SliceFunction SliceFunction::normal() const {
    return SliceFunction(stem_mul(stem_, stem_->conjugate()), domain_);
}

SliceFunction SliceFunction::slice_product(const SliceFunction& other) const {
    return SliceFunction(stem_mul(stem_, other.stem_), domain_);
}

SliceFunction SliceFunction::operator+(const SliceFunction& other) const {
    return SliceFunction(stem_add(stem_, other.stem_), domain_);
}

SliceFunction SliceFunction::operator-(const SliceFunction& other) const {
    return SliceFunction(stem_sub(stem_, other.stem_), domain_);
}

SliceFunction SliceFunction::reciprocal() const {
    return SliceFunction(stem_reciprocal(stem_), domain_);
}

const FunctionClass& SliceFunction::classify(std::uint64_t seed) const {
    if (class_cache_) return *class_cache_;

    FunctionClass cls;
    const std::vector<Complex> samples = domain_.sample_d_plus(300, seed);
    std::vector<StemValue> vals;
    vals.reserve(samples.size());
    double scale = 1.0;
    for (Complex z : samples) {
        vals.push_back(stem_->eval(z));
        scale = std::max({scale, vals.back().f1.norm(), vals.back().f2.norm()});
    }
    const double tol = 1e-7 * scale;

    // Slice constants: vanishing slice derivative.
    {
        const StemPtr d = stem_->derivative();
        double maxd = 0.0;
        for (std::size_t s = 0; s < samples.size(); s += 5) {
            const StemValue dv = d->eval(samples[s]);
            maxd = std::max({maxd, dv.f1.norm(), dv.f2.norm()});
        }
        cls.slice_constant = maxd < tol;
        cls.max_residual = std::max(cls.max_residual, maxd / scale);
    }

    // Slice preserving: real stem components.
    {
        double maxim = 0.0;
        for (const StemValue& v : vals)
            maxim = std::max({maxim, v.f1.imag().norm(), v.f2.imag().norm()});
        cls.slice_preserving = maxim < tol;
    }

    double max_f2 = 0.0;
    std::size_t i0 = 0;
    for (std::size_t s = 0; s < vals.size(); ++s)
        if (vals[s].f2.norm() > max_f2) max_f2 = vals[s].f2.norm(), i0 = s;

    cls.constant = cls.slice_constant && max_f2 < tol;

    // One-slice preserving: all imaginary parts of F1, F2 lie on one line.
    if (!cls.slice_preserving) {
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        for (const StemValue& v : vals) {
            const Eigen::Vector3d u1 = imag_vec(v.f1), u2 = imag_vec(v.f2);
            m += u1 * u1.transpose() + u2 * u2.transpose();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
        const Eigen::Vector3d ev = es.eigenvalues();  // ascending
        if (ev[2] > tol * tol && std::sqrt(std::max(ev[1], 0.0)) < tol) {
            cls.one_slice_preserving = true;
            cls.preserved_slice = ImaginaryUnit(
                from_imag_vec(canonical_axis(es.eigenvectors().col(2))));
        }
    }

    if (cls.constant) {
        cls.tilde_r = cls.tilde_c = true;
        cls.witness_a = Quaternion(1.0);
        cls.witness_b = vals[i0].f1;
    } else if (max_f2 >= tol) {
        // Try f = g a + b via the normalized stem (F1 A^-1, F2 A^-1) with
        // A = F2(z0) at the sample of largest |F2|.
        const Quaternion A = vals[i0].f2;
        const Quaternion Ainv = A.inverse();
        std::vector<Quaternion> g1(vals.size()), g2(vals.size());
        Quaternion mean1;
        for (std::size_t s = 0; s < vals.size(); ++s) {
            g1[s] = vals[s].f1 * Ainv;
            g2[s] = vals[s].f2 * Ainv;
            mean1 = mean1 + g1[s];
        }
        mean1 = mean1 / static_cast<double>(vals.size());

        // tilde_r: F2 A^-1 real and Im(F1 A^-1) constant.
        double r_res = 0.0;
        for (std::size_t s = 0; s < vals.size(); ++s)
            r_res = std::max({r_res, g2[s].imag().norm(), (g1[s] - mean1).imag().norm()});
        if (r_res < tol) {
            cls.tilde_r = cls.tilde_c = true;
            cls.witness_a = A;
            cls.witness_b = mean1.imag() * A;
            cls.max_residual = std::max(cls.max_residual, r_res / scale);
        } else {
            // tilde_c: the same imaginary deviations lie on a single line,
            // whose direction is the preserved unit J of the factor g.
            Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
            for (std::size_t s = 0; s < vals.size(); ++s) {
                const Eigen::Vector3d u1 = imag_vec(g1[s] - mean1), u2 = imag_vec(g2[s]);
                m += u1 * u1.transpose() + u2 * u2.transpose();
            }
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
            const Eigen::Vector3d ev = es.eigenvalues();
            if (ev[2] > tol * tol && std::sqrt(std::max(ev[1], 0.0)) < tol) {
                const ImaginaryUnit J(from_imag_vec(canonical_axis(es.eigenvectors().col(2))));
                cls.tilde_c = true;
                cls.witness_a = A;
                cls.witness_b = project_perp(mean1, J) * A;
                if (!cls.preserved_slice) cls.preserved_slice = J;
            }
        }
    }

    if (cls.slice_preserving && !cls.tilde_r) {
        cls.tilde_r = cls.tilde_c = true;
        cls.witness_a = Quaternion(1.0);
        cls.witness_b = Quaternion();
    }
    if (cls.one_slice_preserving && !cls.tilde_c && max_f2 >= tol) {
        cls.tilde_c = true;
        cls.witness_a = vals[i0].f2;
        cls.witness_b = Quaternion();
    }

    class_cache_ = std::make_shared<FunctionClass>(std::move(cls));
    return *class_cache_;
}

}  // namespace slicereg
