#include "affine/concentration.hpp"

#include <cmath>
#include <sstream>

#include "affine/errors.hpp"

namespace affine {

ConcentrationOperator build_operator(const KernelSpec& spec,
                                     const HyperbolicDisc& region, int depth) {
    KernelSpec pspec = spec.with_normalization(Normalization::Projection);
    ConcentrationOperator op(pspec, region);
    op.grid = disc_grid(region.center, region.R, depth);
    const auto n = static_cast<Eigen::Index>(op.grid.size());
    if (n > 4096) {
        std::ostringstream msg;
        msg << "build_operator: grid of " << n
            << " nodes exceeds the memory budget; use depth <= "
            << std::max(1, depth - 1);
        throw ResourceError(msg.str());
    }
    std::vector<double> sqw(op.grid.size());
    for (std::size_t i = 0; i < op.grid.size(); ++i)
        sqw[i] = std::sqrt(op.grid.weights[i]);

    op.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        op.matrix(i, i) =
            sqw[i] * sqw[i] *
            kernel_closed(pspec, op.grid.nodes[i], op.grid.nodes[i]).value.real();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Complex v = sqw[i] *
                        kernel_closed(pspec, op.grid.nodes[i], op.grid.nodes[j]).value *
                        sqw[j];
            op.matrix(i, j) = v;
            op.matrix(j, i) = std::conj(v);
        }
    }
    op.hermitian_residual =
        (op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("build_operator: eigendecomposition failed");
    // Descending order, clamped to [0,1].
    op.eigenvalues.resize(n);
    op.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double lam = es.eigenvalues()(n - 1 - j);
        double clamped = std::min(1.0, std::max(0.0, lam));
        op.clamp_magnitude = std::max(op.clamp_magnitude, std::abs(lam - clamped));
        op.eigenvalues(j) = clamped;
        op.eigenvectors.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    return op;
}

TraceReport traces(const ConcentrationOperator& op) {
    TraceReport r;
    r.expected = op.matrix.trace().real();
    r.trace_sq = op.eigenvalues.array().square().sum();
    r.variance = r.expected - r.trace_sq;
    r.N_Omega = static_cast<int>(std::floor(r.expected));
    return r;
}

Complex reduced_kernel(const ConcentrationOperator& op, const HalfPlanePoint& z,
                       const HalfPlanePoint& w, bool* empty) {
    const int n_omega = traces(op).N_Omega;
    if (empty) *empty = (n_omega == 0);
    if (n_omega == 0) return {0.0, 0.0};
    const auto n = static_cast<Eigen::Index>(op.grid.size());
    // Nystrom extension phi_j(z) = (1/lambda_j) sum_i sqrt(w_i) p(z,z_i) v_j[i].
    Eigen::VectorXcd pz(n), pw(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double sw = std::sqrt(op.grid.weights[i]);
        pz(i) = sw * kernel_closed(op.spec, z, op.grid.nodes[i]).value;
        pw(i) = sw * kernel_closed(op.spec, w, op.grid.nodes[i]).value;
    }
    Complex sum{0.0, 0.0};
    for (int j = 0; j < n_omega && j < static_cast<int>(n); ++j) {
        double lam = op.eigenvalues(j);
        if (lam <= 1e-12) break;
        Complex phi_z = (pz.transpose() * op.eigenvectors.col(j)).value() / lam;
        Complex phi_w = (pw.transpose() * op.eigenvectors.col(j)).value() / lam;
        sum += phi_z * std::conj(phi_w);
    }
    return sum;
}

void dump_eigenvalues_csv(const ConcentrationOperator& op, std::ostream& out) {
    out << "index,eigenvalue\n";
    for (Eigen::Index j = 0; j < op.eigenvalues.size(); ++j) {
        std::ostringstream line;
        line.precision(17);
        line << j << "," << op.eigenvalues(j) << "\n";
        out << line.str();
    }
}

}  // namespace affine
