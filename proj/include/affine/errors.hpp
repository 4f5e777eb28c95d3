#ifndef AFFINE_ERRORS_HPP
#define AFFINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace affine {

// A grid or panel refinement could not reach the requested accuracy.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// An integrand produced a non-finite value.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// A wavelet profile fails the admissibility integral.
struct AdmissibilityError : std::runtime_error {
    explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

// An extrapolation or iteration failed to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A requested discretization exceeds the memory budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace affine

#endif
