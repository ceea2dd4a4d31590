#include "slicereg/stem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace slicereg {

namespace {

constexpr double kFdStepRel = 1e-6;

// Quaternion-coefficient pair (re_n, s_n) with z^n = re_n + iota beta s_n
// scaled so that s_n is even in beta; used for exact evaluation of f2_hat.
struct PowerSeq {
    // re_{n+1} = alpha re_n - beta^2 s_n,  s_{n+1} = re_n + alpha s_n,
    // starting from re_0 = 1, s_0 = 0.  Then z^n = re_n + iota (beta s_n).
    double alpha, beta2;
    double re = 1.0, s = 0.0;
    void step() {
        const double re_next = alpha * re - beta2 * s;
        s = re + alpha * s;
        re = re_next;
    }
};

class PolynomialStem final : public StemFunction {
  public:
    explicit PolynomialStem(std::vector<Quaternion> coeffs) : coeffs_(std::move(coeffs)) {
        while (coeffs_.size() > 1 && coeffs_.back() == Quaternion{}) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(Quaternion{});
    }

    StemValue eval(Complex z) const override {
        PowerSeq p{z.real(), z.imag() * z.imag()};
        Quaternion f1, f2s;
        for (const Quaternion& a : coeffs_) {
            f1 = f1 + a * p.re;
            f2s = f2s + a * p.s;
            p.step();
        }
        return {f1, f2s * z.imag()};
    }

    Quaternion f2_hat(Complex z) const override {
        PowerSeq p{z.real(), z.imag() * z.imag()};
        Quaternion f2s;
        for (const Quaternion& a : coeffs_) {
            f2s = f2s + a * p.s;
            p.step();
        }
        return f2s;
    }

    StemPtr derivative() const override {
        std::vector<Quaternion> d;
        for (std::size_t n = 1; n < coeffs_.size(); ++n)
            d.push_back(coeffs_[n] * static_cast<double>(n));
        return make_polynomial(std::move(d));
    }

    StemPtr conjugate() const override { return make_polynomial(poly_conj(coeffs_)); }

    const std::vector<Quaternion>* poly_coeffs() const override { return &coeffs_; }

  private:
    std::vector<Quaternion> coeffs_;
};

// Mirror rule shared by the nodes defined only on the upper half plane.
StemValue mirrored(const StemFunction& f, Complex z) {
    StemValue v = f.eval(std::conj(z));
    return {v.f1, -v.f2};
}

class SliceConstantStem final : public StemFunction {
  public:
    SliceConstantStem(const Quaternion& c1, const Quaternion& c2) : c1_(c1), c2_(c2) {}

    StemValue eval(Complex z) const override {
        return z.imag() < 0.0 ? StemValue{c1_, -c2_} : StemValue{c1_, c2_};
    }

    Quaternion f2_hat(Complex z) const override {
        const double beta = z.imag();
        if (beta == 0.0)
            throw std::domain_error("slice constant: spherical value undefined on the reals");
        return c2_ / beta;
    }

    StemPtr derivative() const override { return make_polynomial({}); }

    StemPtr conjugate() const override { return make_slice_constant(c1_.conj(), c2_.conj()); }

  private:
    Quaternion c1_, c2_;
};

Quaternion complex_to_quat(Complex v) { return {v.real(), v.imag(), 0.0, 0.0}; }

class TwoSlicesStem final : public StemFunction {
  public:
    TwoSlicesStem(ComplexMap upper, ComplexMap lower, ComplexMap d_upper, ComplexMap d_lower)
        : upper_(std::move(upper)),
          lower_(std::move(lower)),
          d_upper_(std::move(d_upper)),
          d_lower_(std::move(d_lower)) {}

    StemValue eval(Complex z) const override {
        if (z.imag() < 0.0) return mirrored(*this, z);
        const Complex gu = upper_(z), gl = lower_(z);
        // F1 = (gu + gl)/2, F2 = -(i/2)(gu - gl); values land in C_i.
        return {complex_to_quat(0.5 * (gu + gl)),
                complex_to_quat(Complex(0.0, -0.5) * (gu - gl))};
    }

    Quaternion f2_hat(Complex z) const override {
        const double beta = z.imag();
        if (beta == 0.0)
            throw std::domain_error("two-slice stem: spherical value undefined on the reals");
        StemValue v = eval(z);
        return v.f2 / beta;
    }

    StemPtr derivative() const override;

    StemPtr conjugate() const override {
        // (F^c)_1 = conj(F1), (F^c)_2 = conj(F2): swaps the two slice values
        // and conjugates each, staying anti/holomorphic as required.
        ComplexMap u = lower_, l = upper_;
        ComplexMap du = d_lower_, dl = d_upper_;
        auto wrap = [](ComplexMap g) -> ComplexMap {
            if (!g) return nullptr;
            return [g = std::move(g)](Complex z) { return std::conj(g(z)); };
        };
        return make_two_slices(wrap(std::move(u)), wrap(std::move(l)), wrap(std::move(du)),
                               wrap(std::move(dl)));
    }

  private:
    ComplexMap upper_, lower_, d_upper_, d_lower_;
};

class RealHolomorphicStem final : public StemFunction {
  public:
    RealHolomorphicStem(ComplexMap h, ComplexMap dh, ComplexMap d2h)
        : h_(std::move(h)), dh_(std::move(dh)), d2h_(std::move(d2h)) {}

    StemValue eval(Complex z) const override {
        const Complex v = h_(z);
        return {Quaternion(v.real()), Quaternion(v.imag())};
    }

    Quaternion f2_hat(Complex z) const override {
        const double beta = z.imag();
        if (beta != 0.0) return Quaternion(h_(z).imag() / beta);
        // On the reals F2/beta -> dF2/dbeta = Re h'(alpha).
        if (dh_) return Quaternion(dh_(z).real());
        const double h = kFdStepRel * std::max(1.0, std::abs(z));
        const Complex step(0.0, h);
        return Quaternion(((h_(z + step) - h_(z - step)) / (2.0 * h)).imag());
    }

    StemPtr derivative() const override {
        if (dh_) return make_real_holomorphic(dh_, d2h_);
        return stem_fd_derivative(std::make_shared<RealHolomorphicStem>(h_, nullptr, nullptr));
    }

    StemPtr conjugate() const override {
        // Components are already real.
        return std::make_shared<RealHolomorphicStem>(h_, dh_, d2h_);
    }

  private:
    ComplexMap h_, dh_, d2h_;
};

class SumStem final : public StemFunction {
  public:
    SumStem(StemPtr a, StemPtr b, double sign) : a_(std::move(a)), b_(std::move(b)), sign_(sign) {}

    StemValue eval(Complex z) const override {
        StemValue u = a_->eval(z), v = b_->eval(z);
        return {u.f1 + v.f1 * sign_, u.f2 + v.f2 * sign_};
    }

    Quaternion f2_hat(Complex z) const override {
        return a_->f2_hat(z) + b_->f2_hat(z) * sign_;
    }

    StemPtr derivative() const override {
        return std::make_shared<SumStem>(a_->derivative(), b_->derivative(), sign_);
    }

    StemPtr conjugate() const override {
        return std::make_shared<SumStem>(a_->conjugate(), b_->conjugate(), sign_);
    }

  private:
    StemPtr a_, b_;
    double sign_;
};

class ProductStem final : public StemFunction {
  public:
    ProductStem(StemPtr a, StemPtr b) : a_(std::move(a)), b_(std::move(b)) {}

    StemValue eval(Complex z) const override { return a_->eval(z) * b_->eval(z); }

    Quaternion f2_hat(Complex z) const override {
        // (FG)_2 / beta = F1 (G2/beta) + (F2/beta) G1.
        StemValue u = a_->eval(z), v = b_->eval(z);
        return u.f1 * b_->f2_hat(z) + a_->f2_hat(z) * v.f1;
    }

    StemPtr derivative() const override {
        return stem_add(stem_mul(a_->derivative(), b_), stem_mul(a_, b_->derivative()));
    }

    // Componentwise conjugation does not factor through the stem product, so
    // the conjugate is a generic wrapper (defined after ConjugateStem).
    StemPtr conjugate() const override;

  private:
    StemPtr a_, b_;
};

class ConjugateStem final : public StemFunction {
  public:
    explicit ConjugateStem(StemPtr a) : a_(std::move(a)) {}

    StemValue eval(Complex z) const override {
        StemValue v = a_->eval(z);
        return {v.f1.conj(), v.f2.conj()};
    }

    Quaternion f2_hat(Complex z) const override { return a_->f2_hat(z).conj(); }

    StemPtr derivative() const override {
        return std::make_shared<ConjugateStem>(a_->derivative());
    }

    StemPtr conjugate() const override { return a_; }

  private:
    StemPtr a_;
};

class RightScaleStem final : public StemFunction {
  public:
    RightScaleStem(StemPtr a, const Quaternion& q) : a_(std::move(a)), q_(q) {}

    StemValue eval(Complex z) const override {
        StemValue v = a_->eval(z);
        return {v.f1 * q_, v.f2 * q_};
    }

    Quaternion f2_hat(Complex z) const override { return a_->f2_hat(z) * q_; }

    StemPtr derivative() const override {
        return std::make_shared<RightScaleStem>(a_->derivative(), q_);
    }

    StemPtr conjugate() const override {
        // conj(F a) = conj(a) conj(F): right scale turns into a left scale, so
        // wrap the conjugated stem in a dedicated node.
        return std::make_shared<ConjugateStem>(std::make_shared<RightScaleStem>(a_, q_));
    }

  private:
    StemPtr a_;
    Quaternion q_;
};

class ReciprocalStem final : public StemFunction {
  public:
    explicit ReciprocalStem(StemPtr a) : a_(std::move(a)) {}

    StemValue eval(Complex z) const override {
        StemValue v = a_->eval(z);
        // Normal stem components are real: n1 = |F1|^2 - |F2|^2, n2 = 2<F1,F2>.
        const double n1 = v.f1.norm2() - v.f2.norm2();
        const double n2 = 2.0 * dot(v.f1, v.f2);
        const double den = n1 * n1 + n2 * n2;
        const double scale = 1.0 + v.f1.norm2() + v.f2.norm2();
        if (std::sqrt(den) < 1e-12 * scale)
            throw std::domain_error("stem reciprocal: normal function vanishes at this point");
        return {(v.f1.conj() * n1 + v.f2.conj() * n2) / den,
                (v.f2.conj() * n1 - v.f1.conj() * n2) / den};
    }

    Quaternion f2_hat(Complex z) const override {
        const double beta = z.imag();
        if (beta != 0.0) return eval(z).f2 / beta;
        // F2(alpha)=0 on the reals of a slice domain, so the reciprocal stem
        // reduces to 1/F1 there and its f2_hat is -F1^-1 f2_hat(F) F1^-1.
        StemValue v = a_->eval(z);
        const Quaternion inv = v.f1.inverse();
        return -(inv * a_->f2_hat(z) * inv);
    }

    StemPtr derivative() const override {
        return stem_fd_derivative(std::make_shared<ReciprocalStem>(a_));
    }

    StemPtr conjugate() const override {
        return std::make_shared<ConjugateStem>(std::make_shared<ReciprocalStem>(a_));
    }

  private:
    StemPtr a_;
};

class FdDerivativeStem final : public StemFunction {
  public:
    explicit FdDerivativeStem(StemPtr a) : a_(std::move(a)) {}

    StemValue eval(Complex z) const override {
        const double h = kFdStepRel * std::max(1.0, std::abs(z));
        auto central = [&](double s) {
            StemValue p = a_->eval(z + Complex(s, 0.0));
            StemValue m = a_->eval(z - Complex(s, 0.0));
            return StemValue{(p.f1 - m.f1) / (2.0 * s), (p.f2 - m.f2) / (2.0 * s)};
        };
        // One Richardson extrapolation level: (4 D(h/2) - D(h)) / 3.
        StemValue d1 = central(h), d2 = central(0.5 * h);
        return {(d2.f1 * 4.0 - d1.f1) / 3.0, (d2.f2 * 4.0 - d1.f2) / 3.0};
    }

    Quaternion f2_hat(Complex z) const override {
        const double beta = z.imag();
        if (beta == 0.0)
            throw std::domain_error("fd derivative: spherical value undefined on the reals");
        return eval(z).f2 / beta;
    }

    StemPtr derivative() const override {
        return std::make_shared<FdDerivativeStem>(std::make_shared<FdDerivativeStem>(a_));
    }

    StemPtr conjugate() const override {
        return std::make_shared<FdDerivativeStem>(a_->conjugate());
    }

  private:
    StemPtr a_;
};

StemPtr ProductStem::conjugate() const {
    return std::make_shared<ConjugateStem>(std::make_shared<ProductStem>(a_, b_));
}

StemPtr TwoSlicesStem::derivative() const {
    if (d_upper_ && d_lower_) return make_two_slices(d_upper_, d_lower_);
    return stem_fd_derivative(
        std::make_shared<TwoSlicesStem>(upper_, lower_, nullptr, nullptr));
}

}  // namespace

StemPtr make_polynomial(std::vector<Quaternion> coeffs) {
    return std::make_shared<PolynomialStem>(std::move(coeffs));
}

StemPtr make_slice_constant(const Quaternion& c1, const Quaternion& c2) {
    return std::make_shared<SliceConstantStem>(c1, c2);
}

StemPtr make_eta() {
    // eta(alpha + J beta) = (1 - J i)/2: stem (1/2, -i/2) on the upper half plane.
    return make_slice_constant(Quaternion(0.5), Quaternion::i() * -0.5);
}

StemPtr make_two_slices(ComplexMap upper, ComplexMap lower, ComplexMap d_upper,
                        ComplexMap d_lower) {
    return std::make_shared<TwoSlicesStem>(std::move(upper), std::move(lower),
                                           std::move(d_upper), std::move(d_lower));
}

StemPtr make_real_holomorphic(ComplexMap h, ComplexMap dh, ComplexMap d2h) {
    return std::make_shared<RealHolomorphicStem>(std::move(h), std::move(dh), std::move(d2h));
}

StemPtr stem_add(StemPtr a, StemPtr b) {
    if (const auto* pa = a->poly_coeffs()) {
        if (const auto* pb = b->poly_coeffs()) {
            std::vector<Quaternion> c(std::max(pa->size(), pb->size()));
            for (std::size_t n = 0; n < c.size(); ++n) {
                if (n < pa->size()) c[n] = c[n] + (*pa)[n];
                if (n < pb->size()) c[n] = c[n] + (*pb)[n];
            }
            return make_polynomial(std::move(c));
        }
    }
    return std::make_shared<SumStem>(std::move(a), std::move(b), 1.0);
}

StemPtr stem_sub(StemPtr a, StemPtr b) {
    return std::make_shared<SumStem>(std::move(a), std::move(b), -1.0);
}

StemPtr stem_mul(StemPtr a, StemPtr b) {
    if (const auto* pa = a->poly_coeffs())
        if (const auto* pb = b->poly_coeffs()) return make_polynomial(poly_convolve(*pa, *pb));
    return std::make_shared<ProductStem>(std::move(a), std::move(b));
}

StemPtr stem_rscale(StemPtr a, const Quaternion& q) {
    if (const auto* pa = a->poly_coeffs()) {
        std::vector<Quaternion> c(*pa);
        for (Quaternion& cn : c) cn = cn * q;
        return make_polynomial(std::move(c));
    }
    return std::make_shared<RightScaleStem>(std::move(a), q);
}

StemPtr stem_reciprocal(StemPtr a) { return std::make_shared<ReciprocalStem>(std::move(a)); }

StemPtr stem_fd_derivative(StemPtr a) {
    return std::make_shared<FdDerivativeStem>(std::move(a));
}

std::vector<Quaternion> poly_convolve(const std::vector<Quaternion>& a,
                                      const std::vector<Quaternion>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Quaternion> c(a.size() + b.size() - 1);
    for (std::size_t m = 0; m < a.size(); ++m)
        for (std::size_t l = 0; l < b.size(); ++l) c[m + l] = c[m + l] + a[m] * b[l];
    return c;
}

std::vector<Quaternion> poly_conj(const std::vector<Quaternion>& a) {
    std::vector<Quaternion> c(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) c[n] = a[n].conj();
    return c;
}

PolyQuadDivision poly_divide_quadratic(const std::vector<Quaternion>& p, double re, double n2) {
    PolyQuadDivision out;
    if (p.size() < 3) {
        out.rem0 = p.empty() ? Quaternion{} : p[0];
        out.rem1 = p.size() > 1 ? p[1] : Quaternion{};
        return out;
    }
    // Synthetic division by x^2 - 2re x + n2 (real coefficients commute).
    std::vector<Quaternion> work(p);
    const std::size_t deg = work.size() - 1;
    out.quotient.assign(deg - 1, Quaternion{});
    for (std::size_t n = deg; n >= 2; --n) {
        const Quaternion q = work[n];
        out.quotient[n - 2] = q;
        work[n - 1] = work[n - 1] + q * (2.0 * re);
        work[n - 2] = work[n - 2] - q * n2;
    }
    out.rem0 = work[0];
    out.rem1 = work[1];
    return out;
}

}  // namespace slicereg
