#include "affine/sampler.hpp"

#include <cmath>

#include "affine/rng.hpp"

namespace affine {

PointConfiguration sample(const ConcentrationOperator& op, std::uint64_t seed) {
    PointConfiguration cfg;
    cfg.region = op.region;
    cfg.seed = seed;
    cfg.kernel_summary = op.spec.describe();

    RngStream rng(seed, 0);
    const auto n = op.eigenvalues.size();

    // Phase 1: Bernoulli selection of eigenvectors.
    std::vector<Eigen::Index> selected;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (rng.uniform() < op.eigenvalues(j)) selected.push_back(j);
    }
    Eigen::Index k = static_cast<Eigen::Index>(selected.size());
    if (k == 0) return cfg;

    Eigen::MatrixXcd V(n, k);
    for (Eigen::Index j = 0; j < k; ++j) V.col(j) = op.eigenvectors.col(selected[j]);

    // Phase 2: sequential conditional selection; after each pick the basis
    // is projected off the chosen coordinate and re-orthonormalized.
    for (Eigen::Index step = 0; step < k; ++step) {
        Eigen::Index m = k - step;  // remaining columns
        Eigen::VectorXd p(n);
        for (Eigen::Index i = 0; i < n; ++i)
            p(i) = V.row(i).leftCols(m).squaredNorm();
        double target = rng.uniform() * p.sum();
        Eigen::Index pick = n - 1;
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            acc += p(i);
            if (acc >= target) {
                pick = i;
                break;
            }
        }
        cfg.node_indices.push_back(static_cast<std::size_t>(pick));
        cfg.points.push_back(op.grid.nodes[static_cast<std::size_t>(pick)]);
        if (m == 1) break;

        // Pivot column with the largest coordinate at the picked row.
        Eigen::Index c = 0;
        double best = -1.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            double a = std::abs(V(pick, j));
            if (a > best) {
                best = a;
                c = j;
            }
        }
        Eigen::VectorXcd vc = V.col(c);
        Complex piv = V(pick, c);
        V.col(c) = V.col(m - 1);
        for (Eigen::Index j = 0; j < m - 1; ++j)
            V.col(j) -= (V(pick, j) / piv) * vc;

        // Modified Gram-Schmidt on the remaining m-1 columns.
        for (Eigen::Index j = 0; j < m - 1; ++j) {
            for (Eigen::Index l = 0; l < j; ++l)
                V.col(j) -= V.col(l).dot(V.col(j)) * V.col(l);
            double nrm = V.col(j).norm();
            if (nrm > 1e-14) V.col(j) /= nrm;
        }
    }
    return cfg;
}

BatchStats batch_stats(const ConcentrationOperator& op, int n_samples,
                       std::uint64_t base_seed) {
    if (n_samples < 2)
        throw std::domain_error("batch_stats: n_samples must be >= 2");
    BatchStats st;
    st.n_samples = n_samples;
    const int n_bins = 40;
    const double bin_w = 0.05;
    st.pair_hist.edges.resize(n_bins + 1);
    st.pair_hist.counts.assign(n_bins, 0);
    for (int b = 0; b <= n_bins; ++b) st.pair_hist.edges[b] = b * bin_w;

    std::vector<double> counts(n_samples);
    for (int s = 0; s < n_samples; ++s) {
        PointConfiguration cfg = sample(op, base_seed + static_cast<std::uint64_t>(s));
        counts[s] = static_cast<double>(cfg.points.size());
        st.counts[static_cast<int>(cfg.points.size())]++;
        for (std::size_t i = 0; i < cfg.points.size(); ++i) {
            for (std::size_t j = i + 1; j < cfg.points.size(); ++j) {
                double d = hyp_dist(cfg.points[i], cfg.points[j]);
                int b = static_cast<int>(d / bin_w);
                if (b >= 0 && b < n_bins) st.pair_hist.counts[b]++;
            }
        }
    }
    double mean = 0.0;
    for (double c : counts) mean += c;
    mean /= n_samples;
    double m2 = 0.0, m4 = 0.0;
    for (double c : counts) {
        double d = c - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    double var = m2 / (n_samples - 1);
    m4 /= n_samples;
    st.mean = mean;
    st.var = var;
    st.se_mean = std::sqrt(var / n_samples);
    double var_of_var = (m4 - var * var) / n_samples;
    st.se_var = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
    return st;
}

}  // namespace affine
