#include "affine/specfun.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace affine {

static void check_params(const PolyParams& p) {
    if (p.n < 0) throw std::domain_error("specfun: degree n must be >= 0");
    if (p.alpha <= -1.0)
        throw std::domain_error("specfun: alpha must be > -1");
}

double laguerre(const PolyParams& p, double t) {
    check_params(p);
    if (p.n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + p.alpha - t;
    for (int k = 1; k < p.n; ++k) {
        double lp1 = ((2.0 * k + 1.0 + p.alpha - t) * l - (k + p.alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double hyp2f1_terminating(double a, int n, double c, double x) {
    if (n < 0) throw std::domain_error("hyp2f1_terminating: n must be >= 0");
    // The n+1 terms use (c)_0 .. (c)_n; reject a zero denominator.
    for (int k = 0; k < n; ++k) {
        if (c + k == 0.0)
            throw std::domain_error("hyp2f1_terminating: Pochhammer (c)_k hits zero");
    }
    // Kahan summation; the (-n)_k factor alternates sign.
    double sum = 1.0, comp = 0.0;
    double term = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (a + k) * (-n + k) / ((k + 1.0) * (c + k)) * x;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double gamma_ratio(int n, double alpha) {
    if (n < 0) throw std::domain_error("gamma_ratio: n must be >= 0");
    if (alpha <= -1.0) throw std::domain_error("gamma_ratio: alpha must be > -1");
    double r = 1.0;
    for (int k = 1; k <= n; ++k) r *= (alpha + k) / k;
    return r;
}

double jacobi(const PolyParams& p, double x) {
    check_params(p);
    return gamma_ratio(p.n, p.alpha) *
           hyp2f1_terminating(p.n + p.alpha + p.beta + 1.0, p.n, 1.0 + p.alpha,
                              0.5 * (1.0 - x));
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

GaussRule gauss_laguerre(int n, double a) {
    if (n < 1) throw std::domain_error("gauss_laguerre: n must be >= 1");
    if (a <= -1.0) throw std::domain_error("gauss_laguerre: weight parameter must be > -1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) J(k, k) = 2.0 * k + a + 1.0;
    for (int k = 1; k < n; ++k) {
        double b = std::sqrt(k * (k + a));
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mu0 = std::tgamma(a + 1.0);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

}  // namespace affine
