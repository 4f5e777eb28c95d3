#ifndef AFFINE_VARIANCE_HPP
#define AFFINE_VARIANCE_HPP

#include <vector>

#include "affine/kernels.hpp"

namespace affine {

// Default truncation of the half-plane integrals.
inline constexpr double kDefaultRmax = 0.999;

// Variance of the point count on D(i,R) by the lens-area route:
//   Int |K(i,w)|^2 |D(i,R)^c cap D(w,R)|_h dmu+(w).
double variance_geometric(const KernelSpec& spec, double R, int depth);

// Same quantity by the direct double integral over D(i,R) x complement.
double variance_double(const KernelSpec& spec, double R, int depth);

struct LensFit {
    double kappa = 0.0;      // fitted proportionality constant
    double r_squared = 0.0;  // quality of the arccos fit
};

// Measure the lens constant: extrapolate (1-R^2) * lens_area(w,R) over
// R -> 1 for a spread of centers and fit against arccos(1 - 2 rho^2).
LensFit measure_lens_kappa(int depth);

struct AsymptoticConstant {
    double c_extrapolated = 0.0;
    double c_integral = 0.0;
    double kappa = 0.0;
};

// Extrapolated limit of (1-R^2) * variance_geometric(R) against the
// arccos-integral form with the measured lens constant.
AsymptoticConstant asymptotic_constant(const KernelSpec& spec, int depth);

struct BoundsReport {
    double R = 0.0;
    double v_geometric = 0.0;
    double v_double = 0.0;
    double v_trace = 0.0;
    double expected = 0.0;       // tr T_Omega
    double bound_area = 0.0;     // C_psi * |D(i,R)|_h (matched normalization)
    double bound_admissible = 0.0;
    bool variance_le_expected = false;
    bool variance_le_area_bound = false;
    Normalization normalization = Normalization::Diagonal1;
};

BoundsReport bounds_report(const KernelSpec& spec, double R, int depth);

// Empirical proportionality sweep: V/expected over an R grid.
std::vector<std::pair<double, double>> variance_ratio_sweep(
    const KernelSpec& spec, const std::vector<double>& Rs, int depth);

}  // namespace affine

#endif
