#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "slicereg/registry.hpp"
#include "slicereg/slicefn.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(55667788);

Quaternion random_quat(double s = 1.5) {
    std::uniform_real_distribution<double> u(-s, s);
    return {u(rng), u(rng), u(rng), u(rng)};
}

ImaginaryUnit random_unit() {
    for (;;) {
        const Quaternion q = random_quat();
        if (q.imag_norm() > 0.1) return ImaginaryUnit(q.imag());
    }
}

// A random point of the domain, away from the boundary.
Quaternion random_point(const SymmetricDomain& d) {
    std::uniform_real_distribution<double> ua(d.bbox().alpha_min + 0.2, d.bbox().alpha_max - 0.2);
    std::uniform_real_distribution<double> ub(0.1, d.bbox().beta_max - 0.2);
    for (;;) {
        const Quaternion p = Quaternion(ua(rng)) + random_unit().value() * ub(rng);
        if (d.contains_quaternion(p)) return p;
    }
}

bool approx(const Quaternion& a, const Quaternion& b, double tol = 1e-9) {
    return (a - b).norm() <= tol * (1.0 + a.norm() + b.norm());
}

const SliceFunction& fn(const char* name) { return find_function(name)->fn; }

}  // namespace

TEST_CASE("values on one slice determine all others") {
    // f(alpha + J beta) = (1 - J i)/2 f(alpha + i beta) + (1 + J i)/2 f(alpha - i beta).
    const Quaternion I = Quaternion::i();
    for (const char* name : {"x", "f1", "f2", "f3", "f5", "f6", "eta_exp", "schwarz_exp"}) {
        const SliceFunction& f = fn(name);
        for (int n = 0; n < 50; ++n) {
            const Quaternion p = random_point(f.domain());
            const SliceCoordinates sc = decompose(p);
            const Quaternion up = f.eval(Quaternion(sc.alpha) + I * sc.beta);
            const Quaternion dn = f.eval(Quaternion(sc.alpha) - I * sc.beta);
            const Quaternion J = sc.J.value();
            const Quaternion want =
                (Quaternion(1.0) - J * I) * 0.5 * up + (Quaternion(1.0) + J * I) * 0.5 * dn;
            CHECK(approx(f.eval(p), want));
        }
    }
}

TEST_CASE("evaluation enforces the domain") {
    CHECK_THROWS_AS(fn("f1").eval(Quaternion(1.0)), std::domain_error);       // H minus R
    CHECK_THROWS_AS(fn("xminv").eval(Quaternion()), std::domain_error);       // H minus 0
    CHECK_NOTHROW(fn("xminv").eval(Quaternion(2.0)));
}

TEST_CASE("spherical derivative definition") {
    for (const char* name : {"f1", "f2", "f5", "xminv"}) {
        const SliceFunction& f = fn(name);
        for (int n = 0; n < 40; ++n) {
            const Quaternion p = random_point(f.domain());
            const Quaternion want =
                (p - p.conj()).inverse() * (f.eval(p) - f.eval(p.conj()));
            CHECK(approx(f.spherical_derivative_at(p), want));
        }
    }
}

TEST_CASE("slice derivative matches difference quotients along the slice") {
    for (const char* name : {"f1", "f3", "schwarz_exp", "xminv"}) {
        const SliceFunction& f = fn(name);
        for (int n = 0; n < 30; ++n) {
            const Quaternion p = random_point(f.domain());
            const double h = 1e-6;
            const Quaternion fd =
                (f.eval(p + Quaternion(h)) - f.eval(p - Quaternion(h))) / (2.0 * h);
            CHECK(approx(f.slice_derivative_at(p), fd, 1e-5));
        }
    }
}

TEST_CASE("normal function of a simple polynomial") {
    // N(x - j) = (x - j)(x + j) = x^2 + 1.
    const SliceFunction f(make_polynomial({Quaternion::j() * -1.0, Quaternion(1.0)}),
                          SymmetricDomain::quaternions_minus_reals());
    const SliceFunction N = f.normal();
    const auto* c = N.stem()->poly_coeffs();
    REQUIRE(c != nullptr);
    REQUIRE(c->size() == 3);
    CHECK(approx((*c)[0], Quaternion(1.0), 1e-14));
    CHECK(approx((*c)[1], Quaternion(), 1e-14));
    CHECK(approx((*c)[2], Quaternion(1.0), 1e-14));
}

TEST_CASE("normal function is slice preserving") {
    for (const char* name : {"f1", "f2", "f6"}) {
        const SliceFunction N = fn(name).normal();
        CHECK(N.classify().slice_preserving);
        for (int n = 0; n < 30; ++n) {
            const Quaternion p = random_point(N.domain());
            const SliceCoordinates sc = decompose(p);
            // The value stays in the plane Span(1, J) of the argument.
            const Quaternion v = N.eval(p);
            const Quaternion off = project_perp(v, sc.J);
            CHECK(off.norm() <= 1e-9 * (1.0 + v.norm()));
        }
    }
}

TEST_CASE("slice product against evaluation at the shifted argument") {
    // (f . g)(x) = f(x) g(f(x)^-1 x f(x)) wherever f(x) != 0.
    for (int rep = 0; rep < 15; ++rep) {
        std::vector<Quaternion> ca(4), cb(3);
        for (Quaternion& q : ca) q = random_quat();
        for (Quaternion& q : cb) q = random_quat();
        const SymmetricDomain HmR = SymmetricDomain::quaternions_minus_reals();
        const SliceFunction f(make_polynomial(ca), HmR), g(make_polynomial(cb), HmR);
        const SliceFunction p = f.slice_product(g);
        for (int n = 0; n < 20; ++n) {
            const Quaternion x = random_point(HmR);
            const Quaternion fx = f.eval(x);
            if (fx.norm() < 1e-3) continue;
            const Quaternion shifted = fx.inverse() * x * fx;
            CHECK(approx(p.eval(x), fx * g.eval(shifted), 1e-8));
        }
    }
}

TEST_CASE("reciprocal of a slice preserving function is the pointwise inverse") {
    const SliceFunction f(make_polynomial({Quaternion(1.0), Quaternion(), Quaternion(1.0)}),
                          SymmetricDomain::quaternions_minus_reals());  // x^2 + 1
    const SliceFunction r = f.reciprocal();
    for (int n = 0; n < 30; ++n) {
        const Quaternion p = random_point(f.domain());
        const Quaternion v = f.eval(p);
        if (v.norm() < 1e-3) continue;
        CHECK(approx(r.eval(p), v.inverse(), 1e-8));
    }
    // f . f^{-.} = 1 in general.
    const SliceFunction g = fn("f1");
    const SliceFunction unit = g.slice_product(g.reciprocal());
    for (int n = 0; n < 30; ++n) {
        const Quaternion p = random_point(g.domain());
        try {
            CHECK(approx(unit.eval(p), Quaternion(1.0), 1e-8));
        } catch (const std::domain_error&) {
        }
    }
}

TEST_CASE("structure classification of the example functions") {
    const FunctionClass& cx = fn("x").classify();
    CHECK(cx.slice_preserving);
    CHECK(cx.tilde_r);
    CHECK(cx.tilde_c);
    CHECK(!cx.slice_constant);

    const FunctionClass& c1 = fn("f1").classify();
    CHECK(c1.one_slice_preserving);
    REQUIRE(c1.preserved_slice.has_value());
    CHECK(approx(c1.preserved_slice->value(), Quaternion::i(), 1e-6));
    CHECK(c1.tilde_c);
    CHECK(!c1.tilde_r);
    CHECK(!c1.slice_preserving);

    const FunctionClass& ce = fn("eta").classify();
    CHECK(ce.slice_constant);
    CHECK(!ce.constant);
    CHECK(ce.tilde_r);
    CHECK(ce.tilde_c);

    const FunctionClass& c2 = fn("f2").classify();
    CHECK(c2.tilde_c);
    CHECK(!c2.tilde_r);
    CHECK(!c2.slice_constant);

    const FunctionClass& c6 = fn("f6").classify();
    CHECK(!c6.tilde_c);
    CHECK(!c6.tilde_r);
    CHECK(!c6.slice_preserving);
    CHECK(!c6.one_slice_preserving);
}

TEST_CASE("tilde witnesses reconstruct a one-slice-preserving core") {
    // f in tilde-C means (f - b) a^-1 maps each slice C_J into one fixed plane.
    for (const char* name : {"f1", "f2"}) {
        const SliceFunction& f = fn(name);
        const FunctionClass& c = f.classify();
        REQUIRE(c.tilde_c);
        REQUIRE(c.witness_a.norm() > 1e-9);
        REQUIRE(c.preserved_slice.has_value());
        const Quaternion ainv = c.witness_a.inverse();
        const ImaginaryUnit& J = *c.preserved_slice;
        for (int n = 0; n < 50; ++n) {
            // Points on the preserved slice C_J map into Span(1, J).
            std::uniform_real_distribution<double> u(-2.0, 2.0), ub(0.1, 2.0);
            const Quaternion p = Quaternion(u(rng)) + J.value() * ub(rng);
            if (!f.domain().contains_quaternion(p)) continue;
            const Quaternion h = (f.eval(p) - c.witness_b) * ainv;
            CHECK(project_perp(h, J).norm() <= 1e-6 * (1.0 + h.norm()));
        }
    }
}

TEST_CASE("classification is cached") {
    const SliceFunction& f = fn("f5");
    const FunctionClass* first = &f.classify();
    CHECK(first == &f.classify());
}
