#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "slicereg/fibers.hpp"
#include "slicereg/registry.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(246813579);

Quaternion random_quat(double s = 1.5) {
    std::uniform_real_distribution<double> u(-s, s);
    return {u(rng), u(rng), u(rng), u(rng)};
}

const SliceFunction& fn(const char* name) { return find_function(name)->fn; }

bool close(const Quaternion& a, const Quaternion& b, double tol) {
    return (a - b).norm() <= tol;
}

}  // namespace

TEST_CASE("normal_vanishes detects functions with zero normal") {
    CHECK(normal_vanishes(fn("f5"), Quaternion()));
    CHECK(normal_vanishes(fn("f6"), Quaternion()));
    CHECK(normal_vanishes(fn("f6"), Quaternion::j()));
    CHECK(normal_vanishes(fn("f2"), Quaternion()));
    CHECK(normal_vanishes(fn("f3"), Quaternion::j()));
    CHECK(normal_vanishes(fn("f3"), Quaternion{0.0, 0.0, 0.6, 0.8}));
    CHECK(!normal_vanishes(fn("f3"), Quaternion{0.5, 1.0, 0.0, 0.0}));
    CHECK(!normal_vanishes(fn("f1"), Quaternion(1.0)));
    CHECK(!normal_vanishes(fn("x"), Quaternion()));
    CHECK(!normal_vanishes(fn("f6"), Quaternion::i()));
}

TEST_CASE("fiber of f1 over 1 is the single point i") {
    const FiberReport rep = solve_fiber(fn("f1"), Quaternion(1.0));
    CHECK(!rep.wing.has_value());
    CHECK(rep.spheres.empty());
    CHECK(rep.real_points.empty());
    REQUIRE(rep.isolated.size() == 1);
    // N(f1 - 1) = (x^2+1)^2, a double zero: accept square-root accuracy.
    CHECK(close(rep.isolated[0], Quaternion::i(), 1e-6));
}

TEST_CASE("fiber of x^2 over -1 is a whole sphere") {
    const FiberReport rep = solve_fiber(fn("x2"), Quaternion(-1.0));
    CHECK(!rep.wing.has_value());
    CHECK(rep.isolated.empty());
    REQUIRE(rep.spheres.size() == 1);
    CHECK(rep.spheres[0].alpha == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(rep.spheres[0].beta == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("real fiber points on a slice domain") {
    const FiberReport rep = solve_fiber(fn("xminv"), Quaternion(1.5));
    CHECK(!rep.wing.has_value());
    CHECK(rep.spheres.empty());
    REQUIRE(rep.real_points.size() == 2);
    std::vector<double> pts = rep.real_points;
    std::sort(pts.begin(), pts.end());
    CHECK(pts[0] == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(pts[1] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("fibers of f2") {
    // f2^-1(0) is the wing over 0 (the lower half slice of i).
    const FiberReport zero = solve_fiber(fn("f2"), Quaternion());
    REQUIRE(zero.wing.has_value());
    for (double b : {0.5, 1.0, 2.5}) {
        const Quaternion p = wing_point(fn("f2"), Quaternion(), Complex(0.7, b));
        CHECK(close(p, Quaternion{0.7, -b, 0.0, 0.0}, 1e-9));
        CHECK(close(fn("f2").eval(p), Quaternion(), 1e-9));
    }
    // A value with positive i-component has a singleton fiber.
    const Quaternion c{0.4, 1.1, 0.0, 0.3};
    const FiberReport one = solve_fiber(fn("f2"), c);
    CHECK(!one.wing.has_value());
    REQUIRE(one.isolated.size() == 1);
    CHECK(close(fn("f2").eval(one.isolated[0]), c, 1e-7));
    // A value with negative i-component is not attained.
    const FiberReport none = solve_fiber(fn("f2"), Quaternion{0.4, -1.1, 0.0, 0.3});
    CHECK(!none.wing.has_value());
    CHECK(none.isolated.empty());
    CHECK(none.spheres.empty());
    CHECK(none.real_points.empty());
}

TEST_CASE("wing of f5 over 0 with its degenerate spheres") {
    const FiberReport rep = solve_fiber(fn("f5"), Quaternion());
    REQUIRE(rep.wing.has_value());
    for (int n = 0; n < 40; ++n) {
        std::uniform_real_distribution<double> ua(-2.0, 2.0), ub(0.1, 2.0);
        const Complex z(ua(rng), ub(rng));
        const Quaternion p = wing_point(fn("f5"), Quaternion(), z);
        CHECK(close(fn("f5").eval(p), Quaternion(), 1e-8 * (1.0 + p.norm2())));
        // The wing parametrization stays on the sphere over z.
        CHECK(p.real() == doctest::Approx(z.real()).epsilon(1e-9));
        CHECK(p.imag_norm() == doctest::Approx(z.imag()).epsilon(1e-9));
    }
}

TEST_CASE("wing sets of the examples") {
    const WingSetReport w6 = find_wings(fn("f6"));
    REQUIRE(w6.kind == WingSetKind::Two);
    REQUIRE(w6.values.size() == 2);
    const bool zero_first = w6.values[0].norm() < w6.values[1].norm();
    const Quaternion& v0 = zero_first ? w6.values[0] : w6.values[1];
    const Quaternion& vj = zero_first ? w6.values[1] : w6.values[0];
    CHECK(close(v0, Quaternion(), 1e-7));
    CHECK(close(vj, Quaternion::j(), 1e-7));

    CHECK(find_wings(fn("f1")).kind == WingSetKind::Empty);
    CHECK(find_wings(fn("x")).kind == WingSetKind::Empty);
    CHECK(find_wings(fn("eta")).kind == WingSetKind::WholeDomain);

    const WingSetReport w3 = find_wings(fn("f3"));
    REQUIRE(w3.kind == WingSetKind::Circle);
    REQUIRE(w3.circle.has_value());
    CHECK(w3.circle->radius == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(w3.circle->center.norm() <= 1e-7);
}

TEST_CASE("wing selection keeps the chosen fiber") {
    const SliceFunction g = wing_selection(fn("f5"), Quaternion(), 0.25);
    for (int n = 0; n < 20; ++n) {
        std::uniform_real_distribution<double> ua(-2.0, 2.0), ub(0.2, 2.0);
        const Complex z(ua(rng), ub(rng));
        const Quaternion p = wing_point(fn("f5"), Quaternion(), z);
        CHECK(close(g.eval(p), Quaternion(), 1e-7 * (1.0 + p.norm2())));
    }
}

TEST_CASE("functions built from a Schwarz reflection have unit normal") {
    const SliceFunction& f = fn("f3");
    const StemPtr N = stem_mul(f.stem(), f.stem()->conjugate());
    for (int n = 0; n < 40; ++n) {
        std::uniform_real_distribution<double> u(-2.5, 2.5);
        const Complex z(u(rng), u(rng));
        if (std::abs(z.imag()) < 1e-3) continue;
        const StemValue v = N->eval(z);
        CHECK(close(v.f1, Quaternion(-1.0), 1e-9));
        CHECK(v.f2.norm() <= 1e-9);
    }
}

TEST_CASE("total multiplicity") {
    CHECK(total_multiplicity(fn("x2"), Quaternion()).multiplicity == 2);
    CHECK(total_multiplicity(fn("x"), random_quat()).multiplicity == 1);

    const MultiplicityReport rep = total_multiplicity(fn("f1"), Quaternion::i());
    CHECK(rep.multiplicity >= 2);
    // N(f1 - f1(i)) = (x^2+1)^2, so the cofactor is the constant 1.
    double tail = 0.0;
    for (std::size_t n = 1; n < rep.cofactor.size(); ++n) tail += rep.cofactor[n].norm();
    REQUIRE(!rep.cofactor.empty());
    CHECK(close(rep.cofactor[0], Quaternion(1.0), 1e-9));
    CHECK(tail <= 1e-9);

    CHECK_THROWS_AS(total_multiplicity(fn("f3"), Quaternion::i()), std::invalid_argument);
    // Constant functions have identically vanishing shifted normal.
    const SliceFunction c(make_polynomial({Quaternion(2.0)}),
                          SymmetricDomain::quaternions_minus_reals());
    CHECK_THROWS_AS(total_multiplicity(c, Quaternion::i()), std::invalid_argument);
}
