#ifndef AFFINE_RNG_HPP
#define AFFINE_RNG_HPP

#include <cstdint>

namespace affine {

// Seedable stream generator: xoshiro256** state derived from
// (seed, stream) through splitmix64, giving independent reproducible
// streams per sample index without coordination.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();

    // Uniform in [0,1).
    double uniform();

private:
    std::uint64_t s_[4];
};

}  // namespace affine

#endif
