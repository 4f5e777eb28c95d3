#include <doctest.h>

#include <cmath>

#include "affine/errors.hpp"
#include "affine/grid.hpp"
#include "affine/kernels.hpp"
#include "affine/rng.hpp"

using namespace affine;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(KernelSpec::maass_landau(0.4, 0), std::domain_error);
    CHECK_THROWS_AS(KernelSpec::maass_landau(3.5, 4), std::domain_error);
    CHECK_THROWS_AS(KernelSpec::laguerre_mode(-1.0, 0), std::domain_error);
    CHECK_THROWS_AS(KernelSpec::laguerre_mode(2.0, -1), std::domain_error);
    CHECK_NOTHROW(KernelSpec::maass_landau(3.5, 3));  // alpha = 0 boundary
    CHECK(KernelSpec::maass_landau(3.5, 1).alpha() == doctest::Approx(4.0));
    CHECK(KernelSpec::laguerre_mode(6.0, 2).level() == 2);
}

TEST_CASE("diagonal is one and kernel is hermitian") {
    RngStream r(11, 0);
    for (const auto& spec : {KernelSpec::maass_landau(3.5, 0),
                             KernelSpec::maass_landau(2.75, 1),
                             KernelSpec::laguerre_mode(1.0, 3)}) {
        for (int k = 0; k < 50; ++k) {
            HalfPlanePoint z(2 * r.uniform() - 1, std::exp(r.uniform() - 0.5));
            HalfPlanePoint w(2 * r.uniform() - 1, std::exp(r.uniform() - 0.5));
            CHECK(std::abs(kernel_closed(spec, z, z).value - 1.0) < 1e-11);
            CHECK(std::abs(kernel_closed(spec, z, w).value -
                           std::conj(kernel_closed(spec, w, z).value)) < 1e-13);
        }
    }
}

TEST_CASE("modulus depends only on the pseudohyperbolic distance") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 2);
    RngStream r(12, 0);
    for (int k = 0; k < 50; ++k) {
        HalfPlanePoint z(2 * r.uniform() - 1, std::exp(r.uniform() - 0.5));
        HalfPlanePoint w(2 * r.uniform() - 1, std::exp(r.uniform() - 0.5));
        double t = 1.0 - std::pow(rho(z, w), 2);
        CHECK(std::norm(kernel_closed(spec, z, w).value) ==
              doctest::Approx(kernel_abs2_from_t(spec, t)).epsilon(1e-11));
    }
}

TEST_CASE("ground level is the weighted Bergman kernel modulus") {
    // n = 0: |K| = t^{(alpha+1)/2}
    KernelSpec spec = KernelSpec::laguerre_mode(6.0, 0);
    for (double t : {0.1, 0.4, 0.9}) {
        CHECK(kernel_abs2_from_t(spec, t) ==
              doctest::Approx(std::pow(t, 7.0)).epsilon(1e-12));
    }
}

TEST_CASE("projection normalization scales by the admissibility constant") {
    KernelSpec d1 = KernelSpec::laguerre_mode(6.0, 2);
    KernelSpec pr = d1.with_normalization(Normalization::Projection);
    double C = admissibility(d1);
    CHECK(C == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-13));
    HalfPlanePoint z(0.3, 1.2), w(-0.1, 0.8);
    CHECK(std::abs(kernel_closed(pr, z, w).value * C -
                   kernel_closed(d1, z, w).value) < 1e-12);
    // density of states alpha/(4 pi) on the diagonal
    CHECK(kernel_closed(pr, z, z).value.real() ==
          doctest::Approx(6.0 / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("admissibility blows up at the alpha=0 boundary") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 3);
    CHECK_THROWS_AS(admissibility(spec), AdmissibilityError);
    CHECK_THROWS_AS(
        (void)kernel_closed(spec.with_normalization(Normalization::Projection),
                            HalfPlanePoint::identity(),
                            HalfPlanePoint::identity()),
        AdmissibilityError);
}

TEST_CASE("quadrature kernel agrees with the closed form") {
    KernelSpec spec = KernelSpec::maass_landau(2.75, 1);
    RngStream r(13, 0);
    for (int k = 0; k < 10; ++k) {
        HalfPlanePoint z(r.uniform() - 0.5, std::exp(r.uniform() - 0.5));
        HalfPlanePoint w(r.uniform() - 0.5, std::exp(r.uniform() - 0.5));
        Complex kc = kernel_closed(spec, z, w).value;
        Complex kq = kernel_quadrature(spec, z, w).value;
        CHECK(std::abs(kc - kq) <= 1e-7 * std::abs(kc));
    }
}

TEST_CASE("sampled mother profile reproduces the kernel through the spline") {
    GenericWavelet prof = sample_mother_profile(6.0, 0, 400);
    KernelSpec gen = KernelSpec::generic_wavelet(prof);
    KernelSpec ana = KernelSpec::laguerre_mode(6.0, 0);
    CHECK(admissibility(gen) ==
          doctest::Approx(admissibility(ana)).epsilon(1e-3));
    HalfPlanePoint z(0.2, 1.3), w(-0.3, 0.9);
    Complex kg = kernel_quadrature(gen, z, w).value;
    Complex ka = kernel_closed(ana, z, w).value;
    CHECK(std::abs(kg - ka) < 2e-3 * std::abs(ka));
}

TEST_CASE("wavelet transform of the mother profile is the kernel column") {
    KernelSpec spec = KernelSpec::laguerre_mode(4.0, 1);
    GenericWavelet prof = sample_mother_profile(4.0, 1, 400);
    for (const HalfPlanePoint& z :
         {HalfPlanePoint(0.4, 1.5), HalfPlanePoint(-0.2, 0.7)}) {
        Complex wt = wavelet_transform(prof, spec, z);
        Complex kc =
            kernel_closed(spec, z, HalfPlanePoint::identity()).value;
        CHECK(std::abs(wt - kc) < 2e-3 * std::max(std::abs(kc), 1e-2));
    }
}

TEST_CASE("finite-difference eigenvalue residual is small and shrinks") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 1);
    HalfPlanePoint w0(0.3, 1.1);
    double r1 = maass_residual(spec, w0, 2e-3);
    double r2 = maass_residual(spec, w0, 1e-3);
    CHECK(r1 < 1e-2);
    CHECK(r2 < 0.4 * r1);
}

TEST_CASE("generic wavelet input validation") {
    GenericWavelet bad;
    for (int k = 0; k < 10; ++k) {
        bad.xi.push_back(k + 1.0);
        bad.fhat.push_back(1.0);
    }
    CHECK_THROWS_AS(KernelSpec::generic_wavelet(bad), std::domain_error);
}

TEST_SUITE_END();
