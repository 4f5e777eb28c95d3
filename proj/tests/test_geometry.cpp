#include <doctest.h>

#include <cmath>

#include "affine/geometry.hpp"
#include "affine/rng.hpp"

using namespace affine;

TEST_SUITE_BEGIN("geometry");

namespace {
HalfPlanePoint rnd(RngStream& r) {
    return {3.0 * r.uniform() - 1.5, std::exp(2.0 * r.uniform() - 1.0)};
}
}  // namespace

TEST_CASE("group laws") {
    RngStream r(1, 0);
    for (int k = 0; k < 200; ++k) {
        HalfPlanePoint g = rnd(r), h = rnd(r), f = rnd(r);
        HalfPlanePoint lhs = group_mul(group_mul(g, h), f);
        HalfPlanePoint rhs = group_mul(g, group_mul(h, f));
        CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-12));
        CHECK(lhs.s == doctest::Approx(rhs.s).epsilon(1e-12));
        HalfPlanePoint e = group_mul(g, group_inv(g));
        CHECK(e.x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(e.s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("rho symmetry, range, hyperbolic distance") {
    RngStream r(2, 0);
    for (int k = 0; k < 200; ++k) {
        HalfPlanePoint z = rnd(r), w = rnd(r);
        double a = rho(z, w), b = rho(w, z);
        CHECK(a == doctest::Approx(b).epsilon(1e-13));
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
        CHECK(hyp_dist(z, w) ==
              doctest::Approx(2.0 * std::atanh(a)).epsilon(1e-12));
    }
    CHECK(rho(HalfPlanePoint::identity(), HalfPlanePoint::identity()) == 0.0);
}

TEST_CASE("rho invariant under the group action and mobius maps") {
    RngStream r(3, 0);
    for (int k = 0; k < 100; ++k) {
        HalfPlanePoint g = rnd(r), z = rnd(r), w = rnd(r);
        CHECK(rho(group_mul(g, z), group_mul(g, w)) ==
              doctest::Approx(rho(z, w)).epsilon(1e-12));
        MobiusMap m(1.0 + r.uniform(), r.uniform(), r.uniform(),
                    1.0 + r.uniform());
        CHECK(rho(mobius(m, z), mobius(m, w)) ==
              doctest::Approx(rho(z, w)).epsilon(1e-11));
    }
}

TEST_CASE("mobius rejects orientation-reversing coefficients") {
    CHECK_THROWS(MobiusMap(1.0, 0.0, 0.0, -1.0));
}

TEST_CASE("cayley round trip and base point") {
    CHECK(std::abs(cayley(HalfPlanePoint::identity()).u) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    RngStream r(4, 0);
    for (int k = 0; k < 100; ++k) {
        HalfPlanePoint z = rnd(r);
        HalfPlanePoint back = cayley_inv(cayley(z));
        CHECK(back.x == doctest::Approx(z.x).epsilon(1e-12));
        CHECK(back.s == doctest::Approx(z.s).epsilon(1e-12));
        // |cayley| is rho to i
        CHECK(std::abs(cayley(z).u) ==
              doctest::Approx(rho(z, HalfPlanePoint::identity())).epsilon(1e-12));
    }
}

TEST_CASE("disc_translate is a disc isometry sending 0 to u0") {
    RngStream r(5, 0);
    for (int k = 0; k < 100; ++k) {
        DiskPoint u0(0.8 * Complex(r.uniform() - 0.5, r.uniform() - 0.5));
        DiskPoint a(0.9 * Complex(r.uniform() - 0.5, r.uniform() - 0.5));
        DiskPoint b(0.9 * Complex(r.uniform() - 0.5, r.uniform() - 0.5));
        CHECK(std::abs(disc_translate(u0, DiskPoint(Complex(0, 0))).u - u0.u) <
              1e-14);
        // pseudohyperbolic distance in the disc model
        auto pd = [](Complex p, Complex q) {
            return std::abs((p - q) / (1.0 - std::conj(q) * p));
        };
        CHECK(pd(disc_translate(u0, a).u, disc_translate(u0, b).u) ==
              doctest::Approx(pd(a.u, b.u)).epsilon(1e-12));
    }
}

TEST_CASE("disc area formula and containment") {
    CHECK(disc_area(0.5) == doctest::Approx(4.0 * M_PI * 0.25 / 0.75));
    HyperbolicDisc D(HalfPlanePoint(0.3, 1.2), 0.4);
    CHECK(D.contains(D.center));
    CHECK(!D.contains(HalfPlanePoint(5.0, 0.1)));
    CHECK_THROWS(HyperbolicDisc(HalfPlanePoint::identity(), 1.2));
}

TEST_CASE("inverted disc has the same radius about the inverse center") {
    // rho(z^-1, w^-1) = rho applied through an isometry-like symmetry:
    // membership of w in D(z,R) matches membership of w^-1 in D(z^-1,R)
    RngStream r(6, 0);
    for (int k = 0; k < 200; ++k) {
        HalfPlanePoint z = rnd(r), w = rnd(r);
        double a = rho(z, w);
        // left-translate both by z^{-1}: distances are preserved
        CHECK(rho(group_mul(group_inv(z), z), group_mul(group_inv(z), w)) ==
              doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_SUITE_END();
