#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "slicereg/domain.hpp"

using namespace slicereg;

TEST_CASE("disk membership and kind") {
    const SymmetricDomain d = SymmetricDomain::disk(1.0, 2.0);
    CHECK(d.kind() == DomainKind::SliceDomain);
    CHECK(d.contains_complex(1.0, 0.5));
    CHECK(d.contains_complex(1.0, -0.5));  // conjugation symmetric
    CHECK(!d.contains_complex(4.0, 0.0));
    CHECK(d.contains_quaternion({1.0, 0.3, 0.3, 0.3}));
    CHECK(!d.contains_quaternion({5.0, 0.0, 0.0, 0.0}));

    const SymmetricDomain dp = SymmetricDomain::disk(1.0, 2.0, /*minus_reals=*/true);
    CHECK(dp.kind() == DomainKind::ProductDomain);
    CHECK(!dp.contains_complex(1.0, 0.0));
    CHECK(dp.contains_complex(1.0, 0.5));
}

TEST_CASE("annulus membership") {
    const SymmetricDomain d = SymmetricDomain::annulus(0.0, 1.0, 3.0);
    CHECK(d.contains_complex(2.0, 0.0));
    CHECK(!d.contains_complex(0.5, 0.0));
    CHECK(!d.contains_complex(3.5, 0.0));
    CHECK(d.contains_quaternion({0.0, 2.0, 0.0, 0.0}));
    CHECK(d.kind() == DomainKind::SliceDomain);
}

TEST_CASE("standard domains") {
    const SymmetricDomain H = SymmetricDomain::quaternions();
    CHECK(H.kind() == DomainKind::SliceDomain);
    CHECK(H.contains_quaternion({0, 0, 0, 0}));

    const SymmetricDomain HmR = SymmetricDomain::quaternions_minus_reals();
    CHECK(HmR.kind() == DomainKind::ProductDomain);
    CHECK(!HmR.contains_quaternion({1.0, 0.0, 0.0, 0.0}));
    CHECK(HmR.contains_quaternion({1.0, 1.0, 0.0, 0.0}));

    const SymmetricDomain Hm0 = SymmetricDomain::quaternions_minus_origin();
    CHECK(Hm0.kind() == DomainKind::SliceDomain);
    CHECK(!Hm0.contains_quaternion({0, 0, 0, 0}));
    CHECK(Hm0.contains_quaternion({2.0, 0.0, 0.0, 0.0}));
    CHECK(Hm0.contains_quaternion({0.0, 0.0, 0.1, 0.0}));
}

TEST_CASE("bounding box defaults and override") {
    SymmetricDomain d = SymmetricDomain::quaternions_minus_reals();
    CHECK(d.bbox().alpha_min == -5.0);
    CHECK(d.bbox().beta_max == 5.0);
    d.set_bbox({-2.0, 2.0, 0.0, 3.0});
    CHECK(d.bbox().alpha_max == 2.0);
    CHECK(d.diameter() > 0.0);
    CHECK(d.boundary_margin() > 0.0);
    CHECK(d.boundary_margin() < d.diameter());
}

TEST_CASE("sampling the upper half of the domain") {
    for (const SymmetricDomain& d :
         {SymmetricDomain::disk(0.0, 2.0), SymmetricDomain::quaternions_minus_reals(),
          SymmetricDomain::annulus(0.0, 1.0, 4.0, true)}) {
        const auto pts = d.sample_d_plus(300);
        CHECK(pts.size() >= 250);
        const double margin = d.boundary_margin();
        for (Complex z : pts) {
            CHECK(z.imag() > 0.0);
            CHECK(d.contains_complex(z));
            CHECK(d.interior_distance(z) >= margin * 0.99);
        }
        // Deterministic for a fixed seed.
        const auto again = d.sample_d_plus(300);
        REQUIRE(again.size() == pts.size());
        for (std::size_t n = 0; n < pts.size(); ++n) CHECK(again[n] == pts[n]);
    }
}

TEST_CASE("interior distance sign") {
    const SymmetricDomain d = SymmetricDomain::disk(0.0, 1.0);
    CHECK(d.interior_distance(Complex(0.0, 0.0)) == doctest::Approx(1.0));
    CHECK(d.interior_distance(Complex(0.5, 0.0)) == doctest::Approx(0.5));
    CHECK(d.interior_distance(Complex(2.0, 0.0)) < 0.0);
}
