#ifndef AFFINE_SAMPLER_HPP
#define AFFINE_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "affine/concentration.hpp"

namespace affine {

struct PointConfiguration {
    std::vector<HalfPlanePoint> points;  // grid nodes
    std::vector<std::size_t> node_indices;
    HyperbolicDisc region;
    std::uint64_t seed = 0;
    std::string kernel_summary;
};

// Exact spectral two-phase sampling of the discrete DPP with kernel M:
// Bernoulli(lambda_j) eigenvector selection, then sequential conditional
// point selection with Gram-Schmidt downdating.
PointConfiguration sample(const ConcentrationOperator& op, std::uint64_t seed);

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
};

struct BatchStats {
    double mean = 0.0;
    double var = 0.0;
    double se_mean = 0.0;   // standard error of the mean
    double se_var = 0.0;    // standard error of the variance estimate
    int n_samples = 0;
    std::map<int, std::uint64_t> counts;  // count histogram
    Histogram pair_hist;                  // pairwise hyp_dist per sample pair
};

BatchStats batch_stats(const ConcentrationOperator& op, int n_samples,
                       std::uint64_t base_seed);

}  // namespace affine

#endif
