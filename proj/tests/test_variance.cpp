#include <doctest.h>

#include <cmath>

#include "affine/variance.hpp"

using namespace affine;

TEST_SUITE_BEGIN("variance");

TEST_CASE("geometric and double-integral routes agree") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    for (double R : {0.4, 0.7}) {
        double vg = variance_geometric(spec, R, 2);
        double vd = variance_double(spec, R, 2);
        CHECK(vg == doctest::Approx(vd).epsilon(0.05));
    }
}

TEST_CASE("normalization rescales the variance by C^2") {
    KernelSpec d1 = KernelSpec::maass_landau(3.5, 1);
    KernelSpec pr = d1.with_normalization(Normalization::Projection);
    double C = admissibility(d1);
    double vd = variance_geometric(d1, 0.6, 2);
    double vp = variance_geometric(pr, 0.6, 2);
    CHECK(vp * C * C == doctest::Approx(vd).epsilon(1e-10));
}

TEST_CASE("variance grows with the radius") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    double prev = 0.0;
    for (double R : {0.3, 0.5, 0.7, 0.85}) {
        double v = variance_geometric(spec, R, 2);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("invalid radii are rejected") {
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    CHECK_THROWS(variance_geometric(spec, 1.2, 2));
    CHECK_THROWS(variance_double(spec, 0.0, 2));
}

TEST_CASE("lens constant fit is tight") {
    LensFit fit = measure_lens_kappa(2);
    CHECK(fit.r_squared > 0.995);
    CHECK(fit.kappa > 0.0);
}

TEST_CASE("bounds report satisfies both variance inequalities") {
    for (auto norm : {Normalization::Diagonal1, Normalization::Projection}) {
        KernelSpec spec = KernelSpec::maass_landau(3.5, 0, norm);
        BoundsReport rep = bounds_report(spec, 0.6, 2);
        CHECK(rep.variance_le_expected);
        CHECK(rep.variance_le_area_bound);
        CHECK(rep.v_trace <= rep.bound_area * (1.0 + 1e-9));
        CHECK(rep.v_geometric == doctest::Approx(rep.v_double).epsilon(0.05));
    }
}

TEST_CASE("variance-to-count ratio shrinks toward the boundary") {
    // hyperuniformity: V / expected -> 0 as R -> 1
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    auto sweep = variance_ratio_sweep(spec, {0.5, 0.8}, 2);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[1].second < sweep[0].second);
}

TEST_SUITE_END();
