#include <doctest.h>

#include <cmath>

#include "affine/errors.hpp"
#include "affine/grid.hpp"

using namespace affine;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("disc grid integrates the constant to the hyperbolic area") {
    for (double R : {0.3, 0.6, 0.9}) {
        QuadratureGrid g = disc_grid(HalfPlanePoint::identity(), R, 3);
        double got = integrate_real([](const HalfPlanePoint&) { return 1.0; }, g);
        CHECK(got == doctest::Approx(disc_area(R)).epsilon(1e-10));
    }
}

TEST_CASE("recentred grid preserves the area") {
    HalfPlanePoint c(1.7, 0.4);
    QuadratureGrid g = disc_grid(c, 0.6, 3);
    double got = integrate_real([](const HalfPlanePoint&) { return 1.0; }, g);
    CHECK(got == doctest::Approx(disc_area(0.6)).epsilon(1e-10));
    for (const auto& z : g.nodes) CHECK(rho(z, c) < 0.6);
}

TEST_CASE("ring layout exposes constant rho per ring") {
    HalfPlanePoint c(0.5, 2.0);
    QuadratureGrid g = disc_grid(c, 0.7, 2);
    REQUIRE(g.n_theta > 0);
    REQUIRE(g.n_rings() * g.n_theta == static_cast<int>(g.size()));
    for (int ring = 0; ring < g.n_rings(); ++ring) {
        for (int k = 0; k < g.n_theta; ++k) {
            std::size_t idx = static_cast<std::size_t>(ring) * g.n_theta + k;
            CHECK(rho(g.nodes[idx], c) ==
                  doctest::Approx(g.ring_rho[ring]).epsilon(1e-10));
        }
    }
}

TEST_CASE("annulus grid complements the disc grid") {
    double R = 0.5, Rmax = 0.9;
    QuadratureGrid inner = disc_grid(HalfPlanePoint::identity(), R, 3);
    QuadratureGrid outer = annulus_grid(R, Rmax, 3);
    double a1 = integrate_real([](const HalfPlanePoint&) { return 1.0; }, inner);
    double a2 = integrate_real([](const HalfPlanePoint&) { return 1.0; }, outer);
    CHECK(a1 + a2 == doctest::Approx(disc_area(Rmax)).epsilon(1e-10));
    for (const auto& z : outer.nodes) {
        double r = rho(z, HalfPlanePoint::identity());
        CHECK(r > R);
        CHECK(r < Rmax);
    }
}

TEST_CASE("integration is linear and converges with depth") {
    auto f = [](const HalfPlanePoint& z) {
        double r = rho(z, HalfPlanePoint::identity());
        return std::exp(-3.0 * r * r);
    };
    QuadratureGrid g2 = disc_grid(HalfPlanePoint::identity(), 0.8, 2);
    QuadratureGrid g3 = disc_grid(HalfPlanePoint::identity(), 0.8, 3);
    double v2 = integrate_real(f, g2), v3 = integrate_real(f, g3);
    CHECK(v2 == doctest::Approx(v3).epsilon(1e-6));
    double vsum = integrate_real(
        [&](const HalfPlanePoint& z) { return 2.0 * f(z) + 1.0; }, g3);
    CHECK(vsum == doctest::Approx(2.0 * v3 + disc_area(0.8)).epsilon(1e-10));
}

TEST_CASE("complex integration matches real parts") {
    QuadratureGrid g = disc_grid(HalfPlanePoint::identity(), 0.5, 2);
    auto fc = [](const HalfPlanePoint& z) {
        return std::complex<double>(z.s, -z.x);
    };
    auto c = integrate(fc, g);
    double re = integrate_real([](const HalfPlanePoint& z) { return z.s; }, g);
    double im = integrate_real([](const HalfPlanePoint& z) { return -z.x; }, g);
    CHECK(c.real() == doctest::Approx(re).epsilon(1e-12));
    CHECK(c.imag() == doctest::Approx(im).epsilon(1e-12));
}

TEST_CASE("lens area limits") {
    // Coincident centers: empty lens.
    CHECK(lens_area(HalfPlanePoint::identity(), 0.5, 2) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    // Far center: the whole disc escapes.
    HalfPlanePoint far(0.0, 4000.0);
    CHECK(lens_area(far, 0.5, 3) ==
          doctest::Approx(disc_area(0.5)).epsilon(1e-3));
    // Monotone in the center offset along the axis.
    double prev = 0.0;
    for (double s : {1.2, 1.8, 3.0, 8.0}) {
        double cur = lens_area(HalfPlanePoint(0.0, s), 0.6, 2);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("resolution guard rejects R too close to 1") {
    CHECK_THROWS_AS(disc_grid(HalfPlanePoint::identity(), 1.0 - 1e-14, 2),
                    ResolutionError);
}

TEST_SUITE_END();
