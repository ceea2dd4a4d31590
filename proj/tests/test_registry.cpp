#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "slicereg/registry.hpp"

using namespace slicereg;

namespace {

std::mt19937_64 rng(777);

Complex random_z() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng)};
}

bool approx_sv(const StemValue& a, const StemValue& b, double tol = 1e-12) {
    return (a.f1 - b.f1).norm() <= tol * (1.0 + a.f1.norm()) &&
           (a.f2 - b.f2).norm() <= tol * (1.0 + a.f2.norm());
}

}  // namespace

TEST_CASE("registry covers the classification table exactly once") {
    std::set<int> rows;
    for (const RegistryEntry& e : registry()) {
        if (e.table_row == 0) continue;
        CHECK(rows.insert(e.table_row).second);
        REQUIRE(e.expected.has_value());
    }
    CHECK(rows.size() == 11);
    CHECK(*rows.begin() == 1);
    CHECK(*rows.rbegin() == 11);
}

TEST_CASE("lookup by name") {
    for (const char* name : {"x", "f1", "f2", "f3", "f4", "f5", "f5star", "f6", "f7", "f2star",
                             "eta", "eta_exp", "eta_quad", "schwarz_exp", "x2", "x3p3x", "xminv"})
        CHECK(find_function(name) != nullptr);
    CHECK(find_function("no_such_function") == nullptr);
}

TEST_CASE("every registry function evaluates at an interior point") {
    for (const RegistryEntry& e : registry()) {
        const BoundingBox& b = e.fn.domain().bbox();
        const Quaternion p{0.5 * (b.alpha_min + b.alpha_max) + 0.1, 0.5 * b.beta_max, 0.0, 0.0};
        REQUIRE(e.fn.domain().contains_quaternion(p));
        CHECK_NOTHROW(e.fn.eval(p));
    }
}

TEST_CASE("stems parse from JSON and evaluate identically") {
    // f1 = x^2 - 2xi written as a polynomial node.
    const StemPtr parsed = stem_from_json(
        R"({"op":"poly","coeffs":[[0,0,0,0],[0,-2,0,0],[1,0,0,0]]})");
    const StemPtr builtin = find_function("f1")->fn.stem();
    for (int n = 0; n < 30; ++n) {
        const Complex z = random_z();
        CHECK(approx_sv(parsed->eval(z), builtin->eval(z)));
    }

    // f2 = x * eta as a product node.
    const StemPtr f2 = stem_from_json(
        R"({"op":"mul","args":[{"op":"poly","coeffs":[[0,0,0,0],[1,0,0,0]]},{"op":"eta"}]})");
    const StemPtr f2_builtin = find_function("f2")->fn.stem();
    for (int n = 0; n < 30; ++n) {
        Complex z = random_z();
        if (std::abs(z.imag()) < 1e-3) continue;
        CHECK(approx_sv(f2->eval(z), f2_builtin->eval(z)));
    }

    // Composite nodes: sum, right scale, derivative, reciprocal.
    const StemPtr comp = stem_from_json(R"({
        "op":"add",
        "args":[{"op":"rscale","arg":{"op":"poly","coeffs":[[1,0,0,0],[0,0,1,0]]},"q":[0,1,0,0]},
                {"op":"derivative","arg":{"op":"poly","coeffs":[[0,0,0,0],[0,0,0,0],[1,0,0,0]]}}]})");
    for (int n = 0; n < 10; ++n) {
        const Complex z = random_z();
        // (1 + x j) i + 2x = i + x(ji + 2) = i + x(2 - k).
        const StemPtr want = stem_from_json(
            R"({"op":"poly","coeffs":[[0,1,0,0],[2,0,0,-1]]})");
        CHECK(approx_sv(comp->eval(z), want->eval(z)));
    }

    const StemPtr recip = stem_from_json(
        R"({"op":"recip","arg":{"op":"poly","coeffs":[[1,0,0,0],[0,0,0,0],[1,0,0,0]]}})");
    const Complex z(0.3, 0.4);
    const StemValue rv = recip->eval(z);
    const StemValue pv = stem_from_json(
        R"({"op":"poly","coeffs":[[1,0,0,0],[0,0,0,0],[1,0,0,0]]})")->eval(z);
    const StemValue prod = pv * rv;
    CHECK((prod.f1 - Quaternion(1.0)).norm() <= 1e-10);
    CHECK(prod.f2.norm() <= 1e-10);
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(stem_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(stem_from_json(R"({"op":"nope"})"), std::invalid_argument);
    CHECK_THROWS_AS(stem_from_json(R"({"op":"poly","coeffs":[[1,2]]})"), std::invalid_argument);
    CHECK_THROWS_AS(stem_from_json(R"({"op":"mul","args":[{"op":"eta"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(stem_from_json(R"([1,2,3])"), std::invalid_argument);
}

TEST_CASE("slice constant node mirrors across the reals") {
    const StemPtr c = stem_from_json(R"({"op":"const","c1":[1,0,0,0],"c2":[0,0,1,0]})");
    const Complex z(0.7, 1.2);
    const StemValue up = c->eval(z), dn = c->eval(std::conj(z));
    CHECK((up.f1 - dn.f1).norm() <= 1e-14);
    CHECK((up.f2 + dn.f2).norm() <= 1e-14);
}
