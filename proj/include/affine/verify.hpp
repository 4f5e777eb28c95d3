#ifndef AFFINE_VERIFY_HPP
#define AFFINE_VERIFY_HPP

#include <string>
#include <vector>

namespace affine {

struct VerifyOptions {
    bool strict = false;        // tighten tolerances 10x where grids allow
    std::string cli_path;       // needed by the determinism criterion
};

struct CheckResult {
    int criterion = 0;          // 1..13
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

int criterion_count();

CheckResult run_criterion(int index, const VerifyOptions& opt = {});

// All criteria, optionally filtered by module tag
// (specfun, geometry, quadrature, kernels, concentration, sampler,
// variance, cli).
std::vector<CheckResult> run_verification(const std::string& only_module = "",
                                          const VerifyOptions& opt = {});

}  // namespace affine

#endif
