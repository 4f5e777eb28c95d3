#ifndef AFFINE_CONCENTRATION_HPP
#define AFFINE_CONCENTRATION_HPP

#include <Eigen/Dense>

#include <ostream>

#include "affine/grid.hpp"
#include "affine/kernels.hpp"

namespace affine {

// Symmetric discretization of the Toeplitz concentration operator
//   (T_Omega f)(z) = Int_Omega f(w) p(z,w) dmu+(w)
// on a disc grid, with the projection-normalized kernel p so the
// spectrum lands in [0,1].
struct ConcentrationOperator {
    ConcentrationOperator(KernelSpec spec_, HyperbolicDisc region_)
        : spec(std::move(spec_)), region(region_) {}

    KernelSpec spec;              // Projection normalization enforced
    QuadratureGrid grid;
    HyperbolicDisc region;
    Eigen::MatrixXcd matrix;      // M[i][j] = sqrt(w_i) p(z_i,z_j) sqrt(w_j)
    Eigen::VectorXd eigenvalues;  // descending, clamped to [0,1]
    Eigen::MatrixXcd eigenvectors;
    double clamp_magnitude = 0.0;  // largest clamp applied
    double hermitian_residual = 0.0;
};

ConcentrationOperator build_operator(const KernelSpec& spec,
                                     const HyperbolicDisc& region, int depth);

struct TraceReport {
    double expected = 0.0;   // tr M
    double trace_sq = 0.0;   // tr M^2 = sum lambda^2
    double variance = 0.0;   // tr M - tr M^2
    int N_Omega = 0;         // floor(expected)
};

TraceReport traces(const ConcentrationOperator& op);

// Nystrom extension of the plateau eigenfunctions:
//   K_red(z,w) = sum_{j < N_Omega} phi_j(z) conj(phi_j(w)).
// Sets *empty when N_Omega = 0.
Complex reduced_kernel(const ConcentrationOperator& op, const HalfPlanePoint& z,
                       const HalfPlanePoint& w, bool* empty = nullptr);

// Diagnostic dump, one eigenvalue per line.
void dump_eigenvalues_csv(const ConcentrationOperator& op, std::ostream& out);

}  // namespace affine

#endif
