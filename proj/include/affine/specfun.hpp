#ifndef AFFINE_SPECFUN_HPP
#define AFFINE_SPECFUN_HPP

#include <vector>

namespace affine {

// Parameters of the Laguerre/Jacobi family used by the kernels.
struct PolyParams {
    int n = 0;       // degree, n >= 0
    double alpha = 0.0;  // > -1
    double beta = 0.0;
};

// Generalized Laguerre polynomial L_n^alpha(t), three-term recurrence.
double laguerre(const PolyParams& p, double t);

// Jacobi polynomial P_n^{(alpha,beta)}(x) via the terminating
// hypergeometric representation.
double jacobi(const PolyParams& p, double x);

// Terminating Gauss hypergeometric sum
//   sum_{k=0}^{n} (a)_k (-n)_k x^k / (k! (c)_k)
// accumulated with compensated summation.
double hyp2f1_terminating(double a, int n, double c, double x);

// Gamma(n+1+alpha) / (n! Gamma(1+alpha)) as the product
// prod_{k=1}^{n} (alpha+k)/k, no gamma evaluations.
double gamma_ratio(int n, double alpha);

// Gauss-Legendre rule on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Same rule mapped to [a,b].
GaussRule gauss_legendre(int n, double a, double b);

// Generalized Gauss-Laguerre rule for the weight t^a e^{-t} on (0,inf),
// built by Golub-Welsch from the Jacobi matrix of L_n^a.
GaussRule gauss_laguerre(int n, double a);

}  // namespace affine

#endif
