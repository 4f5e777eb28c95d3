#include "affine/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "affine/concentration.hpp"
#include "affine/errors.hpp"
#include "affine/geometry.hpp"
#include "affine/grid.hpp"
#include "affine/kernels.hpp"
#include "affine/rng.hpp"
#include "affine/sampler.hpp"
#include "affine/specfun.hpp"
#include "affine/variance.hpp"

namespace affine {

namespace {

constexpr int kDepth = 3;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

HalfPlanePoint random_point(RngStream& rng, double x_range = 1.5,
                            double log_s_range = 1.0) {
    double x = (2.0 * rng.uniform() - 1.0) * x_range;
    double s = std::exp((2.0 * rng.uniform() - 1.0) * log_s_range);
    return {x, s};
}

MobiusMap random_mobius(RngStream& rng) {
    for (;;) {
        double a = 2.0 * rng.uniform() - 1.0;
        double b = 2.0 * rng.uniform() - 1.0;
        double c = 2.0 * rng.uniform() - 1.0;
        double d = 2.0 * rng.uniform() - 1.0;
        double det = a * d - b * c;
        if (std::abs(det) < 0.05) continue;
        if (det < 0.0) {
            c = -c;
            d = -d;
        }
        return MobiusMap(a, b, c, d);
    }
}

// Semi-infinite oracle integral of f against the weight t^a e^{-t},
// Gauss-Laguerre with node count doubled until stable.  `scale` sets the
// natural magnitude of the integrand so near-cancelling integrals (the
// off-diagonal orthogonality cases) still register as converged.
double laguerre_oracle(const std::function<double(double)>& f, double a,
                       double scale) {
    double prev = 0.0;
    for (int n = 16;; n *= 2) {
        GaussRule rule = gauss_laguerre(n, a);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(rule.nodes[i]);
        if (n > 16 && std::abs(sum - prev) <= 1e-10 * (std::abs(sum) + scale))
            return sum;
        prev = sum;
        if (n > 1024) throw ConvergenceError("laguerre_oracle: no convergence");
    }
}

// ---- criterion 1: special-function integral oracles ----

CheckResult criterion_specfun(const VerifyOptions& opt) {
    CheckResult res{1, "specfun", "Laguerre orthogonality and weighted norm", false, ""};
    const double tol = opt.strict ? 1e-9 : 1e-8;
    double worst = 0.0;
    for (double alpha : {0.5, 2.0, 6.0}) {
        for (int n = 0; n <= 6; ++n) {
            for (int m = 0; m <= 6; ++m) {
                double scale = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0));
                double got = laguerre_oracle(
                    [&](double t) {
                        return laguerre({n, alpha, 0.0}, t) * laguerre({m, alpha, 0.0}, t);
                    },
                    alpha, scale);
                double want = (n == m) ? scale : 0.0;
                worst = std::max(worst, std::abs(got - want) / scale);
            }
            // Int t^{alpha-1} e^{-2t} L_n^alpha(2t)^2 dt = Gamma(n+a+1)/(2^a n! a)
            double got = laguerre_oracle(
                [&](double t) {
                    double l = laguerre({n, alpha, 0.0}, 2.0 * t);
                    return std::exp(-t) * l * l;
                },
                alpha - 1.0, 1.0);
            double want = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                                   alpha * std::log(2.0)) /
                          alpha;
            worst = std::max(worst, std::abs(got - want) / want);
        }
    }
    res.passed = worst <= tol;
    res.detail = "max relative error " + fmt(worst) + " (tol " + fmt(tol) + ")";
    return res;
}

// ---- criterion 2: closed form vs quadrature kernel ----

CheckResult criterion_closed_vs_quadrature(const VerifyOptions&) {
    CheckResult res{2, "kernels", "closed-form kernel equals quadrature kernel", false, ""};
    double worst = 0.0;
    RngStream rng(20260823, 2);
    for (auto [alpha, n] : std::array<std::pair<double, int>, 3>{
             {{6.0, 0}, {3.0, 2}, {1.0, 1}}}) {
        KernelSpec spec = KernelSpec::laguerre_mode(alpha, n);
        for (int trial = 0; trial < 100; ++trial) {
            HalfPlanePoint z = random_point(rng, 1.0, 0.7);
            HalfPlanePoint w = random_point(rng, 1.0, 0.7);
            Complex kc = kernel_closed(spec, z, w).value;
            Complex kq = kernel_quadrature(spec, z, w).value;
            worst = std::max(worst, std::abs(kc - kq) / std::abs(kc));
        }
    }
    res.passed = worst <= 1e-6;
    res.detail = "max relative difference " + fmt(worst) + " over 300 pairs (tol 1e-6)";
    return res;
}

// ---- criterion 3: diagonal, symmetry, Mobius invariance ----

CheckResult criterion_kernel_structure(const VerifyOptions& opt) {
    CheckResult res{3, "kernels", "diagonal, Hermitian symmetry, Mobius invariance",
                    false, ""};
    const double tol_diag = opt.strict ? 1e-11 : 1e-10;
    const double tol_herm = opt.strict ? 1e-13 : 1e-12;
    const double tol_mob = opt.strict ? 1e-11 : 1e-10;
    RngStream rng(20260823, 3);
    double w_diag = 0.0, w_herm = 0.0, w_mob = 0.0;
    std::vector<KernelSpec> specs = {KernelSpec::maass_landau(3.5, 0),
                                     KernelSpec::maass_landau(3.5, 1),
                                     KernelSpec::laguerre_mode(2.5, 2)};
    for (const auto& spec : specs) {
        for (int trial = 0; trial < 100; ++trial) {
            HalfPlanePoint z = random_point(rng);
            HalfPlanePoint w = random_point(rng);
            w_diag = std::max(w_diag,
                              std::abs(kernel_closed(spec, z, z).value - 1.0));
            Complex kzw = kernel_closed(spec, z, w).value;
            Complex kwz = kernel_closed(spec, w, z).value;
            w_herm = std::max(w_herm, std::abs(kzw - std::conj(kwz)));
            MobiusMap m = random_mobius(rng);
            Complex km = kernel_closed(spec, mobius(m, z), mobius(m, w)).value;
            w_mob = std::max(w_mob, std::abs(std::abs(km) - std::abs(kzw)));
        }
    }
    res.passed = w_diag <= tol_diag && w_herm <= tol_herm && w_mob <= tol_mob;
    res.detail = "diagonal " + fmt(w_diag) + ", hermitian " + fmt(w_herm) +
                 ", mobius " + fmt(w_mob);
    return res;
}

// ---- criterion 4: admissibility mass ----

CheckResult criterion_mass(const VerifyOptions&) {
    CheckResult res{4, "kernels", "total kernel mass equals 4*pi/alpha", false, ""};
    // The (B,n) = (3.5,3) boundary level has alpha = 0 and a divergent
    // admissibility integral; the nonzero-n coverage runs as a Laguerre
    // mode with the same numeric parameters instead.
    std::vector<KernelSpec> specs = {
        KernelSpec::maass_landau(1.5, 0), KernelSpec::maass_landau(2.75, 1),
        KernelSpec::maass_landau(3.5, 0), KernelSpec::laguerre_mode(3.5, 3)};
    double worst = 0.0;
    std::ostringstream det;
    for (const auto& spec : specs) {
        QuadratureGrid g = halfplane_grid(kDefaultRmax, kDepth);
        const HalfPlanePoint base = HalfPlanePoint::identity();
        double mass = integrate_real(
            [&](const HalfPlanePoint& w) {
                return std::norm(kernel_closed(spec, base, w).value);
            },
            g);
        double want = admissibility(spec);
        double rel = std::abs(mass - want) / want;
        worst = std::max(worst, rel);
        det << spec.describe() << " rel " << fmt(rel) << "; ";
    }
    res.passed = worst <= 1e-3;
    res.detail = det.str() + "(tol 1e-3)";
    return res;
}

// ---- criterion 5: projection identity ----

CheckResult criterion_projection_identity(const VerifyOptions&) {
    CheckResult res{5, "kernels", "kernel self-reproduction under integration",
                    false, ""};
    RngStream rng(20260823, 5);
    double worst = 0.0;
    QuadratureGrid g = halfplane_grid(kDefaultRmax, kDepth);
    for (const auto& spec :
         {KernelSpec::maass_landau(3.5, 0), KernelSpec::maass_landau(2.75, 1)}) {
        double C = admissibility(spec);
        for (int trial = 0; trial < 5; ++trial) {
            HalfPlanePoint z = random_point(rng, 1.0, 0.6);
            HalfPlanePoint wp = random_point(rng, 1.0, 0.6);
            Complex lhs = integrate(
                [&](const HalfPlanePoint& w) {
                    return kernel_closed(spec, z, w).value *
                           kernel_closed(spec, w, wp).value;
                },
                g);
            Complex rhs = C * kernel_closed(spec, z, wp).value;
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    res.passed = worst <= 5e-3;
    res.detail = "max relative deviation " + fmt(worst) + " at 10 pairs (tol 5e-3)";
    return res;
}

// ---- criterion 6: Maass eigenvalue finite-difference check ----

CheckResult criterion_maass(const VerifyOptions&) {
    CheckResult res{6, "kernels", "magnetic Laplacian eigenvalue residual", false, ""};
    bool ok = true;
    std::ostringstream det;
    const HalfPlanePoint w0(0.4, 1.3);
    for (int n : {0, 3}) {
        KernelSpec spec = KernelSpec::maass_landau(3.5, n);
        double r1 = maass_residual(spec, w0, 1e-3);
        double r2 = maass_residual(spec, w0, 5e-4);
        double ratio = r2 / r1;
        bool pass = r1 < 1e-3 && ratio > 0.15 && ratio < 0.40;
        ok = ok && pass;
        det << "n=" << n << " residual " << fmt(r1) << " ratio " << fmt(ratio)
            << "; ";
    }
    res.passed = ok;
    res.detail = det.str() + "(residual tol 1e-3, ratio in [0.15,0.40])";
    return res;
}

// ---- criterion 7: variance identity (lens route vs double integral) ----

CheckResult criterion_variance_identity(const VerifyOptions&) {
    CheckResult res{7, "variance", "lens-route variance equals double integral",
                    false, ""};
    double worst = 0.0;
    std::ostringstream det;
    for (int n : {0, 1}) {
        KernelSpec spec = KernelSpec::maass_landau(3.5, n);
        for (double R : {0.5, 0.7, 0.9}) {
            double vg = variance_geometric(spec, R, kDepth + 1);
            double vd = variance_double(spec, R, kDepth + 1);
            double rel = std::abs(vg - vd) / vd;
            worst = std::max(worst, rel);
            det << "n=" << n << ",R=" << R << ": " << fmt(rel) << "; ";
        }
    }
    res.passed = worst <= 0.01;
    res.detail = det.str() + "(tol 1%)";
    return res;
}

// ---- criterion 8: trace consistency with depth gate ----

CheckResult criterion_trace_consistency(const VerifyOptions&) {
    CheckResult res{8, "concentration", "operator traces match double-integral variance",
                    false, ""};
    KernelSpec spec =
        KernelSpec::maass_landau(3.5, 0, Normalization::Projection);
    const double R = 0.8;
    HyperbolicDisc region(HalfPlanePoint::identity(), R);
    ConcentrationOperator op_lo = build_operator(spec, region, kDepth - 1);
    ConcentrationOperator op_hi = build_operator(spec, region, kDepth);
    TraceReport lo = traces(op_lo), hi = traces(op_hi);
    double d_exp = std::abs(hi.expected - lo.expected) / hi.expected;
    double d_var = std::abs(hi.variance - lo.variance) / hi.variance;
    double vd = variance_double(spec, R, kDepth);
    double rel = std::abs(hi.variance - vd) / vd;
    res.passed = d_exp < 5e-3 && d_var < 5e-3 && rel <= 0.01;
    res.detail = "depth gate expected " + fmt(d_exp) + " variance " + fmt(d_var) +
                 "; trace-vs-double " + fmt(rel) + " (gates 0.5%, tol 1%)";
    return res;
}

// ---- criterion 9: asymptotic constant and lens fit ----

CheckResult criterion_asymptotics(const VerifyOptions&) {
    CheckResult res{9, "variance,quadrature", "asymptotic variance constant", false, ""};
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    LensFit fit = measure_lens_kappa(kDepth);
    AsymptoticConstant ac = asymptotic_constant(spec, kDepth);
    double rel = std::abs(ac.c_extrapolated - ac.c_integral) /
                 std::abs(ac.c_integral);
    res.passed = rel <= 0.02 && fit.r_squared >= 0.999;
    res.detail = "c_extrapolated " + fmt(ac.c_extrapolated) + ", c_integral " +
                 fmt(ac.c_integral) + ", rel " + fmt(rel) + ", kappa " +
                 fmt(ac.kappa) + ", lens fit R^2 " + fmt(fit.r_squared);
    return res;
}

// ---- criterion 10: non-asymptotic bounds ----

CheckResult criterion_bounds(const VerifyOptions&) {
    CheckResult res{10, "variance,concentration", "variance upper bounds", false, ""};
    bool ok = true;
    std::ostringstream det;
    KernelSpec spec = KernelSpec::maass_landau(3.5, 0);
    for (double R : {0.5, 0.8}) {
        BoundsReport rep = bounds_report(spec, R, kDepth - 1);
        ok = ok && rep.variance_le_expected && rep.variance_le_area_bound;
        double C = admissibility(spec);
        det << "R=" << R << " margin_area "
            << fmt(C * disc_area(R) - rep.v_geometric) << " margin_trace "
            << fmt(rep.expected - rep.v_trace) << "; ";
    }
    res.passed = ok;
    res.detail = det.str();
    return res;
}

// ---- criterion 11: sampler statistics ----

CheckResult criterion_sampler(const VerifyOptions&) {
    CheckResult res{11, "sampler", "sample statistics match operator traces",
                    false, ""};
    KernelSpec spec =
        KernelSpec::maass_landau(3.5, 0, Normalization::Projection);
    HyperbolicDisc region(HalfPlanePoint::identity(), 0.8);
    ConcentrationOperator op = build_operator(spec, region, kDepth);
    TraceReport tr = traces(op);
    const int n_samples = 2000;
    BatchStats st = batch_stats(op, n_samples, 20260823);

    double mean_dev = std::abs(st.mean - tr.expected) / st.se_mean;
    double var_dev = std::abs(st.var - tr.variance) / st.se_var;

    // Poisson-binomial law of the eigenvalues.
    std::vector<double> pmf{1.0};
    for (Eigen::Index j = 0; j < op.eigenvalues.size(); ++j) {
        double lam = op.eigenvalues(j);
        if (lam < 1e-10) continue;
        pmf.push_back(0.0);
        for (std::size_t k = pmf.size() - 1; k > 0; --k)
            pmf[k] = pmf[k] * (1.0 - lam) + pmf[k - 1] * lam;
        pmf[0] *= (1.0 - lam);
    }
    double tv = 0.0;
    std::size_t kmax = pmf.size();
    for (std::size_t k = 0; k < kmax; ++k) {
        auto it = st.counts.find(static_cast<int>(k));
        double emp = it == st.counts.end()
                         ? 0.0
                         : static_cast<double>(it->second) / n_samples;
        tv += std::abs(emp - pmf[k]);
    }
    tv *= 0.5;

    // Short-range pair density against the product-intensity benchmark.
    const double d_short = 0.05;
    double benchmark = 0.0;
    const auto n = static_cast<Eigen::Index>(op.grid.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (hyp_dist(op.grid.nodes[i], op.grid.nodes[j]) < d_short)
                benchmark += op.matrix(i, i).real() * op.matrix(j, j).real();
        }
    }
    std::uint64_t short_pairs = 0;
    for (std::size_t b = 0; b < st.pair_hist.counts.size(); ++b) {
        if (st.pair_hist.edges[b + 1] <= d_short + 1e-12)
            short_pairs += st.pair_hist.counts[b];
    }
    double emp_pairs = static_cast<double>(short_pairs) / n_samples;

    bool ok = mean_dev <= 3.0 && var_dev <= 5.0 && tv < 0.03 &&
              benchmark > 0.0 && emp_pairs < benchmark;
    res.passed = ok;
    std::ostringstream det;
    det << "mean " << fmt(st.mean) << " vs tr " << fmt(tr.expected) << " ("
        << fmt(mean_dev) << " se); var " << fmt(st.var) << " vs " << fmt(tr.variance)
        << " (" << fmt(var_dev) << " se); TV " << fmt(tv) << "; short pairs "
        << fmt(emp_pairs) << " < poisson " << fmt(benchmark);
    res.detail = det.str();
    return res;
}

// ---- criterion 12: geometry ----

// Hyperbolic area of the pseudohyperbolic disc D(z0,R) by direct
// euclidean-polar quadrature in the half-plane (independent of the
// Cayley-pullback grids).
double disc_area_euclidean(const HalfPlanePoint& z0, double R, int n_r, int n_t) {
    double yc = z0.s * (1.0 + R * R) / (1.0 - R * R);
    double re = 2.0 * z0.s * R / (1.0 - R * R);
    GaussRule rad = gauss_legendre(n_r, 0.0, re);
    double sum = 0.0;
    for (int i = 0; i < n_r; ++i) {
        double r = rad.nodes[i];
        double ring = 0.0;
        for (int k = 0; k < n_t; ++k) {
            double th = 2.0 * M_PI * (k + 0.5) / n_t;
            double s = yc + r * std::sin(th);
            ring += 1.0 / (s * s);
        }
        sum += rad.weights[i] * r * ring * (2.0 * M_PI / n_t);
    }
    return sum;
}

CheckResult criterion_geometry(const VerifyOptions& opt) {
    CheckResult res{12, "geometry,quadrature", "areas, measure transport, metric identities",
                    false, ""};
    const double tol_area = opt.strict ? 1e-4 : 1e-3;
    const double tol_id = 1e-12;
    double w_area = 0.0;
    for (double R : {0.3, 0.5, 0.8}) {
        double got = disc_area_euclidean(HalfPlanePoint(2.0, 3.0), R, 200, 256);
        double want = disc_area(R);
        w_area = std::max(w_area, std::abs(got - want) / want);
    }

    // Measure transport: cartesian (x, log s) quadrature vs the Cayley
    // pullback grid, five smooth integrands.
    double w_transport = 0.0;
    QuadratureGrid disc_side = halfplane_grid(kDefaultRmax, kDepth + 2);
    for (int k = 0; k < 5; ++k) {
        double x0 = 0.3 * k - 0.6, y0 = 0.2 * k - 0.4, aa = 1.0 + 0.3 * k;
        auto f = [&](const HalfPlanePoint& z) {
            double y = std::log(z.s);
            return std::exp(-aa * ((z.x - x0) * (z.x - x0) + (y - y0) * (y - y0)));
        };
        GaussRule gx = gauss_legendre(120, -7.0, 7.0);
        GaussRule gy = gauss_legendre(120, -7.0, 7.0);
        double cart = 0.0;
        for (int i = 0; i < 120; ++i) {
            double row = 0.0;
            for (int j = 0; j < 120; ++j) {
                double y = gy.nodes[j];
                row += gy.weights[j] * f(HalfPlanePoint(gx.nodes[i], std::exp(y))) *
                       std::exp(-y);
            }
            cart += gx.weights[i] * row;
        }
        double disc = integrate_real(f, disc_side);
        w_transport = std::max(w_transport, std::abs(cart - disc) / std::abs(cart));
    }

    RngStream rng(20260823, 12);
    double w_id = 0.0;
    const HalfPlanePoint base = HalfPlanePoint::identity();
    for (int trial = 0; trial < 10000; ++trial) {
        HalfPlanePoint z = random_point(rng);
        HalfPlanePoint w = random_point(rng);
        w_id = std::max(w_id, std::abs(rho(group_inv(z), base) - rho(base, z)));
        w_id = std::max(w_id,
                        std::abs(rho(group_mul(w, z), base) - rho(group_inv(w), z)));
    }
    res.passed = w_area <= tol_area && w_transport <= 1e-6 && w_id <= tol_id;
    res.detail = "area " + fmt(w_area) + ", transport " + fmt(w_transport) +
                 ", identities " + fmt(w_id);
    return res;
}

// ---- criterion 13: CLI determinism ----

std::string run_capture(const std::string& cmd) {
    std::string out;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return "<popen failed>";
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    pclose(p);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CheckResult criterion_determinism(const VerifyOptions& opt) {
    CheckResult res{13, "cli", "CLI byte-reproducibility", false, ""};
    if (opt.cli_path.empty()) {
        res.detail = "cli path not provided";
        return res;
    }
    const std::string cli = opt.cli_path;
    std::vector<std::string> cmds = {
        cli + " kernel --B 3.5 --n 1 --z 0.3+1.2i --w -0.2+0.8i",
        cli + " constants --alpha 6 --n 2",
    };
    bool ok = true;
    std::ostringstream det;
    for (const auto& c : cmds) {
        if (run_capture(c) != run_capture(c)) {
            ok = false;
            det << "stdout differs for: " << c << "; ";
        }
    }
    const char* tmp = std::getenv("TMPDIR");
    std::string dir = tmp ? tmp : "/tmp";
    std::string f1 = dir + "/affine_det_1", f2 = dir + "/affine_det_2";
    std::vector<std::pair<std::string, std::string>> file_cmds = {
        {" sample --B 3.5 --n 0 --R 0.6 --depth 1 --seed 7 --out ", ".json"},
        {" variance --B 3.5 --n 0 --R 0.5 --method trace --depth 1 --out ", ".csv"},
    };
    for (const auto& [args, ext] : file_cmds) {
        run_capture(cli + args + f1 + ext);
        run_capture(cli + args + f2 + ext);
        if (slurp(f1 + ext) != slurp(f2 + ext)) {
            ok = false;
            det << "file output differs for:" << args << "; ";
        }
        std::remove((f1 + ext).c_str());
        std::remove((f2 + ext).c_str());
    }
    res.passed = ok;
    res.detail = ok ? "all command outputs byte-identical across runs" : det.str();
    return res;
}

}  // namespace

int criterion_count() { return 13; }

CheckResult run_criterion(int index, const VerifyOptions& opt) {
    switch (index) {
        case 1: return criterion_specfun(opt);
        case 2: return criterion_closed_vs_quadrature(opt);
        case 3: return criterion_kernel_structure(opt);
        case 4: return criterion_mass(opt);
        case 5: return criterion_projection_identity(opt);
        case 6: return criterion_maass(opt);
        case 7: return criterion_variance_identity(opt);
        case 8: return criterion_trace_consistency(opt);
        case 9: return criterion_asymptotics(opt);
        case 10: return criterion_bounds(opt);
        case 11: return criterion_sampler(opt);
        case 12: return criterion_geometry(opt);
        case 13: return criterion_determinism(opt);
        default:
            throw std::out_of_range("run_criterion: index must be 1..13");
    }
}

std::vector<CheckResult> run_verification(const std::string& only_module,
                                          const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    for (int i = 1; i <= criterion_count(); ++i) {
        if (!only_module.empty()) {
            // Module tags are static per criterion; run only on match.
            static const std::array<const char*, 13> tags = {
                "specfun", "kernels", "kernels", "kernels", "kernels",
                "kernels", "variance", "concentration", "variance,quadrature",
                "variance,concentration", "sampler", "geometry,quadrature", "cli"};
            std::string tag = tags[static_cast<std::size_t>(i - 1)];
            if (tag.find(only_module) == std::string::npos) continue;
        }
        out.push_back(run_criterion(i, opt));
    }
    return out;
}

}  // namespace affine
