#include <doctest.h>

#include <cmath>

#include "affine/specfun.hpp"

using namespace affine;

TEST_SUITE_BEGIN("specfun");

TEST_CASE("laguerre low degrees") {
    for (double t : {0.0, 0.3, 1.7, 5.0}) {
        CHECK(laguerre({0, 2.5, 0.0}, t) == doctest::Approx(1.0));
        CHECK(laguerre({1, 2.5, 0.0}, t) == doctest::Approx(3.5 - t));
        // L_2^a(t) = (a+1)(a+2)/2 - (a+2)t + t^2/2
        double a = 2.5;
        CHECK(laguerre({2, a, 0.0}, t) ==
              doctest::Approx((a + 1) * (a + 2) / 2 - (a + 2) * t + t * t / 2));
    }
}

TEST_CASE("jacobi value at 1 is the binomial coefficient") {
    for (int n = 0; n <= 8; ++n)
        CHECK(jacobi({n, 1.5, 0.5}, 1.0) ==
              doctest::Approx(gamma_ratio(n, 1.5)).epsilon(1e-13));
}

TEST_CASE("chu-vandermonde closes the terminating sum at x=1") {
    // 2F1(a,-n;c;1) = (c-a)_n / (c)_n
    double a = 4.0, c = 2.5;
    for (int n = 0; n <= 6; ++n) {
        double want = 1.0;
        for (int k = 0; k < n; ++k) want *= (c - a + k) / (c + k);
        CHECK(hyp2f1_terminating(a, n, c, 1.0) ==
              doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("gamma_ratio against lgamma") {
    for (int n : {0, 1, 5, 12}) {
        for (double alpha : {0.5, 3.0, 6.0}) {
            double want = std::exp(std::lgamma(n + 1 + alpha) - std::lgamma(n + 1) -
                                   std::lgamma(1 + alpha));
            CHECK(gamma_ratio(n, alpha) == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    GaussRule g = gauss_legendre(8);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double x = g.nodes[i];
        sum += g.weights[i] * (x * x * x * x * x * x);  // x^6
    }
    CHECK(sum == doctest::Approx(2.0 / 7.0).epsilon(1e-13));

    GaussRule h = gauss_legendre(8, 1.0, 3.0);
    double s2 = 0.0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i)
        s2 += h.weights[i] * h.nodes[i] * h.nodes[i];
    CHECK(s2 == doctest::Approx(26.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("gauss-laguerre moments") {
    double a = 1.5;
    GaussRule g = gauss_laguerre(12, a);
    // Int t^a e^-t t^k dt = Gamma(a+k+1)
    for (int k = 0; k <= 4; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            sum += g.weights[i] * std::pow(g.nodes[i], k);
        CHECK(sum == doctest::Approx(std::exp(std::lgamma(a + k + 1)))
                         .epsilon(1e-11));
    }
}

TEST_SUITE_END();
