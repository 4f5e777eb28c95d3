#ifndef AFFINE_KERNELS_HPP
#define AFFINE_KERNELS_HPP

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "affine/geometry.hpp"

namespace affine {

// Hyperbolic Landau level: B > 1/2, 0 <= n <= floor(B - 1/2).
// Maps onto LaguerreMode via alpha = 2(B-n)-1.
struct MaassLandau {
    double B;
    int n;
};

// Laguerre wavelet mode: alpha > 0, n >= 0.
struct LaguerreMode {
    double alpha;
    int n;
};

// Sampled nonnegative-frequency profile fhat(xi), xi strictly increasing > 0.
struct GenericWavelet {
    std::vector<double> xi;
    std::vector<Complex> fhat;
    double decay_exponent = 1.0;  // declared decay scale of |fhat|
};

enum class Normalization { Diagonal1, Projection };

namespace detail {
class ProfileSpline;
}

class KernelSpec {
public:
    static KernelSpec maass_landau(double B, int n,
                                   Normalization norm = Normalization::Diagonal1);
    static KernelSpec laguerre_mode(double alpha, int n,
                                    Normalization norm = Normalization::Diagonal1);
    static KernelSpec generic_wavelet(GenericWavelet profile,
                                      Normalization norm = Normalization::Diagonal1);

    bool is_analytic() const;  // MaassLandau or LaguerreMode
    bool is_generic() const { return !is_analytic(); }

    // Laguerre parameters of the analytic variants.
    double alpha() const;
    int level() const;

    const MaassLandau* as_maass_landau() const;
    const GenericWavelet& profile() const;

    // Normalized frequency profile: for the analytic variants the unit-norm
    // Laguerre function, for GenericWavelet the spline interpolant.
    Complex profile_value(double xi) const;
    double profile_support_max() const;

    Normalization normalization() const { return norm_; }
    KernelSpec with_normalization(Normalization norm) const;

    std::string describe() const;

private:
    KernelSpec() = default;
    std::variant<MaassLandau, LaguerreMode, GenericWavelet> variant_;
    Normalization norm_ = Normalization::Diagonal1;
    std::shared_ptr<const detail::ProfileSpline> spline_;
};

struct KernelValue {
    Complex value;
};

// Closed-form kernel for the analytic variants:
// with a = (alpha+1)/2, t = 4 Im z Im w / |z - conj(w)|^2 and the
// unimodular u = (conj(z)-w)/(conj(w)-z),
//   K = (-1)^n gamma_ratio(n,alpha) t^a u^{a+n} 2F1(n+alpha+1,-n;1+alpha;t),
// complex powers on the principal branch. Projection divides by 4*pi/alpha.
KernelValue kernel_closed(const KernelSpec& spec, const HalfPlanePoint& z,
                          const HalfPlanePoint& w);

// |K(z,w)|^2 as a function of t = 1 - rho(z,w)^2 alone; same formula with
// the unimodular factor dropped. Hot path for the variance integrals.
double kernel_abs2_from_t(const KernelSpec& spec, double t);

// One-dimensional semi-infinite oscillatory quadrature of the frequency-
// side kernel integral, normalized so the diagonal is 1.
KernelValue kernel_quadrature(const KernelSpec& spec, const HalfPlanePoint& z,
                              const HalfPlanePoint& w);

// Admissibility constant C_psi: 4*pi/alpha in closed form for the
// analytic variants, quadrature of 2*pi*Int |fhat|^2 t^{-1} dt (per unit
// L2 norm) for GenericWavelet.
double admissibility(const KernelSpec& spec);

// Analytic wavelet transform W_psi f(z) of a sampled frequency profile f.
Complex wavelet_transform(const GenericWavelet& fhat, const KernelSpec& spec,
                          const HalfPlanePoint& z);

// Max relative residual of the finite-difference magnetic Laplacian
// applied to K(.,w0) against the Landau level eigenvalue
// (B-n)(1-B+n), over a fixed test set; 5-point stencil of step h.
double maass_residual(const KernelSpec& spec, const HalfPlanePoint& w0, double h);

// Sample the unit-norm Laguerre-mode profile on a log-spaced grid.
GenericWavelet sample_mother_profile(double alpha, int n, int n_samples);

// Two-column (xi, value) or three-column (xi, re, im) text profile.
GenericWavelet load_profile(const std::string& path);

}  // namespace affine

#endif
