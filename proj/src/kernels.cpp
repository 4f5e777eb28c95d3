#include "affine/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "affine/errors.hpp"
#include "affine/specfun.hpp"

namespace affine {

namespace detail {

// Natural cubic spline of a complex-valued profile; zero outside the
// sampled range.
class ProfileSpline {
public:
    explicit ProfileSpline(const GenericWavelet& p) : x_(p.xi) {
        const std::size_t n = x_.size();
        re_.resize(n);
        im_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            re_[i] = p.fhat[i].real();
            im_[i] = p.fhat[i].imag();
        }
        d2re_ = second_derivatives(re_);
        d2im_ = second_derivatives(im_);
    }

    Complex eval(double x) const {
        if (x < x_.front() || x > x_.back()) return {0.0, 0.0};
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t j = std::min<std::size_t>(
            x_.size() - 2, static_cast<std::size_t>(it - x_.begin()) - 1);
        double h = x_[j + 1] - x_[j];
        double a = (x_[j + 1] - x) / h, b = (x - x_[j]) / h;
        double cre = a * re_[j] + b * re_[j + 1] +
                     ((a * a * a - a) * d2re_[j] + (b * b * b - b) * d2re_[j + 1]) *
                         h * h / 6.0;
        double cim = a * im_[j] + b * im_[j + 1] +
                     ((a * a * a - a) * d2im_[j] + (b * b * b - b) * d2im_[j + 1]) *
                         h * h / 6.0;
        return {cre, cim};
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> second_derivatives(const std::vector<double>& y) const {
        const std::size_t n = x_.size();
        std::vector<double> d2(n, 0.0), u(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
            double p = sig * d2[i - 1] + 2.0;
            d2[i] = (sig - 1.0) / p;
            double rhs = (y[i + 1] - y[i]) / (x_[i + 1] - x_[i]) -
                         (y[i] - y[i - 1]) / (x_[i] - x_[i - 1]);
            u[i] = (6.0 * rhs / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (std::size_t i = n - 1; i-- > 0;) d2[i] = d2[i] * d2[i + 1] + u[i];
        return d2;
    }

    std::vector<double> x_;
    std::vector<double> re_, im_, d2re_, d2im_;
};

}  // namespace detail

namespace {

// Unit-norm Laguerre profile sqrt(2^{a+1} n!/Gamma(n+a+1)) t^{a/2} e^{-t} L_n^a(2t).
double mother_norm_const(double alpha, int n) {
    double lg = 0.5 * ((alpha + 1.0) * std::log(2.0) + std::lgamma(n + 1.0) -
                       std::lgamma(n + alpha + 1.0));
    return std::exp(lg);
}

double mother_value(double alpha, int n, double t) {
    if (t <= 0.0) return 0.0;
    return mother_norm_const(alpha, n) * std::pow(t, 0.5 * alpha) * std::exp(-t) *
           laguerre({n, alpha, 0.0}, 2.0 * t);
}

struct AnalyticParams {
    double alpha;
    int n;
};

AnalyticParams analytic_params(const KernelSpec& spec) {
    return {spec.alpha(), spec.level()};
}

// Composite Gauss-Legendre panel integration of an oscillatory integrand,
// panel width halved until the value settles.
Complex panel_integral(const std::function<Complex(double)>& g, double lo,
                       double hi, double width0, double rel_tol) {
    if (!(hi > lo)) return {0.0, 0.0};
    const GaussRule base = gauss_legendre(12);
    int n_panels = std::max(4, static_cast<int>(std::ceil((hi - lo) / width0)));
    Complex prev{0.0, 0.0};
    bool have_prev = false;
    for (int iter = 0; iter < 14; ++iter) {
        double h = (hi - lo) / n_panels;
        Complex sum{0.0, 0.0}, comp{0.0, 0.0};
        for (int p = 0; p < n_panels; ++p) {
            double a = lo + p * h;
            double mid = a + 0.5 * h, half = 0.5 * h;
            for (int i = 0; i < 12; ++i) {
                Complex v = g(mid + half * base.nodes[i]) * (half * base.weights[i]);
                Complex y = v - comp;
                Complex t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        }
        if (have_prev) {
            double change = std::abs(sum - prev);
            if (change <= rel_tol * std::abs(sum) + 1e-15) return sum;
        }
        prev = sum;
        have_prev = true;
        n_panels *= 2;
    }
    std::ostringstream msg;
    msg << "panel_integral: no convergence; last iterates " << std::abs(prev)
        << " (panels " << n_panels / 2 << ")";
    throw ResolutionError(msg.str());
}

// Upper cutoff for the analytic profiles: beyond it the integrand
// xi^alpha e^{-(s+s')xi} is below ~1e-22 of its peak.
double analytic_cutoff(double alpha, int n, double s_sum) {
    double x = (55.0 + 2.0 * (alpha + 2.0 * n)) / s_sum;
    for (int it = 0; it < 4; ++it)
        x = (55.0 + (alpha + 2.0 * n) * std::log(std::max(x, 1.0))) / s_sum;
    return x;
}

}  // namespace

KernelSpec KernelSpec::maass_landau(double B, int n, Normalization norm) {
    if (!(B > 0.5))
        throw std::domain_error("MaassLandau: requires B > 1/2");
    int n_max = static_cast<int>(std::floor(B - 0.5));
    if (n < 0 || n > n_max) {
        std::ostringstream msg;
        msg << "MaassLandau: level n must satisfy 0 <= n <= floor(B-1/2) = " << n_max;
        throw std::domain_error(msg.str());
    }
    KernelSpec spec;
    spec.variant_ = MaassLandau{B, n};
    spec.norm_ = norm;
    return spec;
}

KernelSpec KernelSpec::laguerre_mode(double alpha, int n, Normalization norm) {
    if (!(alpha > 0.0))
        throw std::domain_error("LaguerreMode: requires alpha > 0");
    if (n < 0) throw std::domain_error("LaguerreMode: requires n >= 0");
    KernelSpec spec;
    spec.variant_ = LaguerreMode{alpha, n};
    spec.norm_ = norm;
    return spec;
}

KernelSpec KernelSpec::generic_wavelet(GenericWavelet profile, Normalization norm) {
    if (profile.xi.size() < 64)
        throw std::domain_error("GenericWavelet: needs at least 64 samples");
    if (profile.xi.size() != profile.fhat.size())
        throw std::domain_error("GenericWavelet: xi/fhat size mismatch");
    if (profile.xi.front() <= 0.0)
        throw std::domain_error("GenericWavelet: xi must be > 0");
    for (std::size_t i = 1; i < profile.xi.size(); ++i)
        if (profile.xi[i] <= profile.xi[i - 1])
            throw std::domain_error("GenericWavelet: xi must be strictly increasing");
    KernelSpec spec;
    spec.spline_ = std::make_shared<detail::ProfileSpline>(profile);
    spec.variant_ = std::move(profile);
    spec.norm_ = norm;
    return spec;
}

bool KernelSpec::is_analytic() const {
    return !std::holds_alternative<GenericWavelet>(variant_);
}

double KernelSpec::alpha() const {
    if (const auto* ml = std::get_if<MaassLandau>(&variant_))
        return 2.0 * (ml->B - ml->n) - 1.0;
    if (const auto* lm = std::get_if<LaguerreMode>(&variant_)) return lm->alpha;
    throw std::domain_error("KernelSpec: GenericWavelet has no Laguerre parameters");
}

int KernelSpec::level() const {
    if (const auto* ml = std::get_if<MaassLandau>(&variant_)) return ml->n;
    if (const auto* lm = std::get_if<LaguerreMode>(&variant_)) return lm->n;
    throw std::domain_error("KernelSpec: GenericWavelet has no Laguerre parameters");
}

const MaassLandau* KernelSpec::as_maass_landau() const {
    return std::get_if<MaassLandau>(&variant_);
}

const GenericWavelet& KernelSpec::profile() const {
    if (const auto* gw = std::get_if<GenericWavelet>(&variant_)) return *gw;
    throw std::domain_error("KernelSpec: not a GenericWavelet");
}

Complex KernelSpec::profile_value(double xi) const {
    if (is_analytic()) return {mother_value(alpha(), level(), xi), 0.0};
    return spline_->eval(xi);
}

double KernelSpec::profile_support_max() const {
    if (is_analytic()) return analytic_cutoff(alpha(), level(), 1.0);
    return spline_->x_max();
}

KernelSpec KernelSpec::with_normalization(Normalization norm) const {
    KernelSpec spec = *this;
    spec.norm_ = norm;
    return spec;
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    if (const auto* ml = std::get_if<MaassLandau>(&variant_))
        os << "MaassLandau{B=" << ml->B << ",n=" << ml->n << "}";
    else if (const auto* lm = std::get_if<LaguerreMode>(&variant_))
        os << "LaguerreMode{alpha=" << lm->alpha << ",n=" << lm->n << "}";
    else
        os << "GenericWavelet{" << profile().xi.size() << " samples}";
    os << (norm_ == Normalization::Diagonal1 ? "/diagonal1" : "/projection");
    return os.str();
}

KernelValue kernel_closed(const KernelSpec& spec, const HalfPlanePoint& z,
                          const HalfPlanePoint& w) {
    if (!spec.is_analytic())
        throw std::domain_error("kernel_closed: needs MaassLandau or LaguerreMode");
    const auto [alpha, n] = analytic_params(spec);
    const Complex zc = z.z(), wc = w.z();
    const double t = 4.0 * z.s * w.s / std::norm(zc - std::conj(wc));
    const Complex u = (std::conj(zc) - wc) / (std::conj(wc) - zc);
    const double a = 0.5 * (alpha + 1.0);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    Complex val = sign * gamma_ratio(n, alpha) * std::pow(t, a) *
                  std::pow(u, Complex(a + n, 0.0)) *
                  hyp2f1_terminating(n + alpha + 1.0, n, 1.0 + alpha, t);
    if (spec.normalization() == Normalization::Projection) {
        if (!(alpha > 0.0))
            throw AdmissibilityError(
                "kernel_closed: no projection normalization for alpha <= 0");
        val *= alpha / (4.0 * M_PI);
    }
    return {val};
}

double kernel_abs2_from_t(const KernelSpec& spec, double t) {
    const auto [alpha, n] = analytic_params(spec);
    const double sign_free =
        gamma_ratio(n, alpha) * std::pow(t, 0.5 * (alpha + 1.0)) *
        hyp2f1_terminating(n + alpha + 1.0, n, 1.0 + alpha, t);
    double v = sign_free * sign_free;
    if (spec.normalization() == Normalization::Projection) {
        double p = alpha / (4.0 * M_PI);
        v *= p * p;
    }
    return v;
}

KernelValue kernel_quadrature(const KernelSpec& spec, const HalfPlanePoint& z,
                              const HalfPlanePoint& w) {
    const double s = z.s, sp = w.s;
    const double dx = z.x - w.x;
    double lo = 0.0, hi;
    double width;
    if (spec.is_analytic()) {
        hi = analytic_cutoff(spec.alpha(), spec.level(), s + sp);
        width = 2.0 / (s + sp);
    } else {
        const auto& p = spec.profile();
        lo = p.xi.front() / std::min(s, sp);
        hi = p.xi.back() / std::max(s, sp);
        width = (hi - lo) / 32.0;
    }
    if (std::abs(dx) > 0.0)
        width = std::min(width, M_PI / (4.0 * std::abs(dx)));
    auto integrand = [&](double xi) -> Complex {
        Complex a = spec.profile_value(sp * xi);
        Complex b = std::conj(spec.profile_value(s * xi));
        return a * b * std::exp(Complex(0.0, dx * xi));
    };
    Complex raw = panel_integral(integrand, lo, hi, width, 1e-9);
    // Diagonal at i = Int |fhat|^2, evaluated with the same engine.
    auto diag_integrand = [&](double xi) -> Complex {
        return std::norm(spec.profile_value(xi));
    };
    double dlo = spec.is_analytic() ? 0.0 : spec.profile().xi.front();
    double dhi = spec.is_analytic() ? analytic_cutoff(spec.alpha(), spec.level(), 2.0)
                                    : spec.profile().xi.back();
    double dwidth = spec.is_analytic() ? 1.0 : (dhi - dlo) / 32.0;
    Complex diag = panel_integral(diag_integrand, dlo, dhi, dwidth, 1e-10);
    Complex val = std::sqrt(s * sp) * raw / diag.real();
    if (spec.normalization() == Normalization::Projection)
        val /= admissibility(spec);
    return {val};
}

double admissibility(const KernelSpec& spec) {
    if (spec.is_analytic()) {
        // The boundary level alpha = 0 (half-integer B, top n) has a
        // divergent admissibility integral.
        if (!(spec.alpha() > 0.0))
            throw AdmissibilityError(
                "admissibility: divergent for alpha <= 0 (boundary Landau level)");
        return 4.0 * M_PI / spec.alpha();
    }
    const auto& p = spec.profile();
    const double lo = p.xi.front(), hi = p.xi.back();
    // Low-end exponent of |fhat|^2 from the first two samples; the
    // admissibility integral needs |fhat|^2 = o(t^0) at 0.
    double y0 = std::norm(p.fhat[0]), y1 = std::norm(p.fhat[1]);
    double expnt = 0.0;
    if (y0 > 0.0 && y1 > 0.0)
        expnt = std::log(y1 / y0) / std::log(p.xi[1] / p.xi[0]);
    if (y0 > 0.0 && expnt <= 0.0)
        throw AdmissibilityError(
            "admissibility: profile does not vanish fast enough at 0");
    auto weighted = [&](double t) -> Complex {
        return std::norm(spec.profile_value(t)) / t;
    };
    auto plain = [&](double t) -> Complex {
        return std::norm(spec.profile_value(t));
    };
    double i_weighted = panel_integral(weighted, lo, hi, (hi - lo) / 64.0, 1e-10).real();
    double i_plain = panel_integral(plain, lo, hi, (hi - lo) / 64.0, 1e-10).real();
    // Analytic continuation of the power-law head below the first sample.
    if (y0 > 0.0 && expnt > 0.0) {
        i_weighted += y0 / expnt;
        i_plain += y0 * lo / (expnt + 1.0);
    }
    if (!(i_plain > 0.0))
        throw AdmissibilityError("admissibility: profile has zero norm");
    return 2.0 * M_PI * i_weighted / i_plain;
}

Complex wavelet_transform(const GenericWavelet& fhat, const KernelSpec& spec,
                          const HalfPlanePoint& z) {
    detail::ProfileSpline f(fhat);
    const double s = z.s, x = z.x;
    double lo = fhat.xi.front();
    double hi = std::min(fhat.xi.back(), spec.profile_support_max() / s);
    double width = spec.is_analytic() ? 2.0 / (1.0 + s) : (hi - lo) / 32.0;
    if (std::abs(x) > 0.0) width = std::min(width, M_PI / (4.0 * std::abs(x)));
    // Inner-product convention of the kernel integral, so that
    // W_psi psi(z) = K(z, i).
    auto integrand = [&](double xi) -> Complex {
        return f.eval(xi) * std::exp(Complex(0.0, x * xi)) *
               std::conj(spec.profile_value(s * xi));
    };
    Complex raw = panel_integral(integrand, lo, hi, width, 1e-9);
    return std::sqrt(s) * raw;
}

double maass_residual(const KernelSpec& spec, const HalfPlanePoint& w0, double h) {
    const MaassLandau* ml = spec.as_maass_landau();
    if (!ml) throw std::domain_error("maass_residual: spec must be MaassLandau");
    const double B = ml->B;
    const double eps = (B - ml->n) * (1.0 - B + ml->n);
    static const std::vector<HalfPlanePoint> test_set = {
        {0.2, 1.1}, {-0.4, 0.8}, {0.7, 1.6}, {0.05, 0.5}, {-0.15, 2.2}, {0.33, 0.77}};
    auto K = [&](double x, double s) {
        return kernel_closed(spec, HalfPlanePoint(x, s), w0).value;
    };
    double worst = 0.0;
    for (const auto& z : test_set) {
        if (z.s - h <= 0.0)
            throw std::domain_error("maass_residual: stencil leaves the half-plane");
        Complex f0 = K(z.x, z.s);
        Complex fxp = K(z.x + h, z.s), fxm = K(z.x - h, z.s);
        Complex fsp = K(z.x, z.s + h), fsm = K(z.x, z.s - h);
        Complex lap = (fxp + fxm - 2.0 * f0 + fsp + fsm - 2.0 * f0) / (h * h);
        Complex dX = (fxp - fxm) / (2.0 * h);
        // Magnetic Laplacian with the sign that makes the Landau levels
        // (B-n)(1-B+n): H_B = -(s^2 (dxx + dss) - 2iBs dx).
        Complex Hf = -(z.s * z.s * lap - Complex(0.0, 2.0 * B * z.s) * dX);
        double r = std::abs(Hf - eps * f0) / std::abs(f0);
        worst = std::max(worst, r);
    }
    return worst;
}

GenericWavelet sample_mother_profile(double alpha, int n, int n_samples) {
    if (n_samples < 64) n_samples = 64;
    GenericWavelet p;
    double lo = 1e-4, hi = analytic_cutoff(alpha, n, 1.0);
    p.xi.resize(n_samples);
    p.fhat.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double t = lo * std::pow(hi / lo, i / (n_samples - 1.0));
        p.xi[i] = t;
        p.fhat[i] = {mother_value(alpha, n, t), 0.0};
    }
    p.decay_exponent = 1.0;
    return p;
}

GenericWavelet load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_profile: cannot open " + path);
    GenericWavelet p;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        double xi, re, im = 0.0;
        if (!(ls >> xi >> re)) continue;
        ls >> im;
        p.xi.push_back(xi);
        p.fhat.push_back({re, im});
    }
    if (p.xi.size() < 64)
        throw std::runtime_error("load_profile: needs at least 64 samples");
    return p;
}

}  // namespace affine
