#include "affine/variance.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "affine/concentration.hpp"
#include "affine/errors.hpp"
#include "affine/grid.hpp"
#include "affine/specfun.hpp"

namespace affine {

namespace {

// Point at pseudohyperbolic radius r from i on the imaginary axis.
HalfPlanePoint axis_point(double r) {
    return {0.0, (1.0 + r) / (1.0 - r)};
}

// |K(z,w)|^2 as a function of t = 1 - rho^2 with the 2F1 polynomial
// coefficients precomputed; hot path of the variance integrals.
struct Abs2Evaluator {
    explicit Abs2Evaluator(const KernelSpec& spec) {
        analytic = spec.is_analytic();
        if (analytic) {
            alpha = spec.alpha();
            n = spec.level();
            pref = gamma_ratio(n, alpha);
            if (spec.normalization() == Normalization::Projection)
                pref *= alpha / (4.0 * M_PI);
            coeff.assign(n + 1, 0.0);
            coeff[0] = 1.0;
            double a = n + alpha + 1.0, c = 1.0 + alpha;
            for (int k = 0; k < n; ++k)
                coeff[k + 1] =
                    coeff[k] * (a + k) * (-n + k) / ((k + 1.0) * (c + k));
        } else {
            gspec = std::make_unique<KernelSpec>(spec);
        }
    }

    double from_t(double t) const {
        double f = coeff[n];
        for (int k = n - 1; k >= 0; --k) f = f * t + coeff[k];
        double v = pref * std::pow(t, 0.5 * (alpha + 1.0)) * f;
        return v * v;
    }

    // |K(i,w)|^2 at a node; generic profiles lack rotational symmetry and
    // go through the quadrature kernel.
    double at(const HalfPlanePoint& w) const {
        if (analytic) {
            double r = rho(w, HalfPlanePoint::identity());
            return from_t(1.0 - r * r);
        }
        return std::norm(
            kernel_quadrature(*gspec, HalfPlanePoint::identity(), w).value);
    }

    double pair(const HalfPlanePoint& z, const HalfPlanePoint& w) const {
        if (analytic) {
            double r = rho(z, w);
            return from_t(1.0 - r * r);
        }
        return std::norm(kernel_quadrature(*gspec, z, w).value);
    }

    bool analytic = true;
    double alpha = 0.0;
    int n = 0;
    double pref = 1.0;
    std::vector<double> coeff;
    std::unique_ptr<KernelSpec> gspec;
};

// Least-squares line y = c0 + c1*x; returns the intercept c0.
double ls_intercept(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = m * sxx - sx * sx;
    double c1 = (m * sxy - sx * sy) / denom;
    return (sy - c1 * sx) / m;
}

const std::vector<double> kAsymptoticRs = {0.9, 0.95, 0.975, 0.99};

}  // namespace

double variance_geometric(const KernelSpec& spec, double R, int depth) {
    if (!(R > 0.0 && R < 1.0))
        throw std::domain_error("variance_geometric: R must lie in (0,1)");
    QuadratureGrid g = halfplane_grid(kDefaultRmax, depth);
    Abs2Evaluator abs2(spec);
    const int nt = g.n_theta;
    double total = 0.0, head = 0.0;  // head: contribution with rho <= 0.99
    for (int ring = 0; ring < g.n_rings(); ++ring) {
        double rr = g.ring_rho[ring];
        double lens = lens_area(axis_point(rr), R, depth);
        double ring_sum = 0.0;
        for (int k = 0; k < nt; ++k) {
            std::size_t idx = static_cast<std::size_t>(ring) * nt + k;
            ring_sum += g.weights[idx] * abs2.at(g.nodes[idx]);
        }
        total += ring_sum * lens;
        if (rr <= 0.99) head += ring_sum * lens;
    }
    double tail = total - head;
    if (std::abs(tail) > 0.01 * std::abs(total)) {
        std::ostringstream msg;
        msg << "variance_geometric: truncation tail estimate " << tail
            << " exceeds 1% of value " << total;
        throw ResolutionError(msg.str());
    }
    return total;
}

double variance_double(const KernelSpec& spec, double R, int depth) {
    if (!(R > 0.0 && R < 1.0))
        throw std::domain_error("variance_double: R must lie in (0,1)");
    QuadratureGrid inside = disc_grid(HalfPlanePoint::identity(), R, depth);
    QuadratureGrid outside = annulus_grid(R, kDefaultRmax, depth);
    Abs2Evaluator abs2(spec);
    double total = 0.0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        double row = 0.0;
        const HalfPlanePoint& z = inside.nodes[i];
        for (std::size_t j = 0; j < outside.size(); ++j)
            row += outside.weights[j] * abs2.pair(z, outside.nodes[j]);
        total += inside.weights[i] * row;
    }
    return total;
}

LensFit measure_lens_kappa(int depth) {
    std::vector<double> rhos, targets;
    for (int k = 1; k <= 20; ++k) rhos.push_back(k / 21.0);
    std::vector<double> eps;
    for (double R : kAsymptoticRs) eps.push_back(1.0 - R * R);
    for (double r : rhos) {
        std::vector<double> vals;
        for (double R : kAsymptoticRs)
            vals.push_back((1.0 - R * R) * lens_area(axis_point(r), R, depth));
        targets.push_back(ls_intercept(eps, vals));
    }
    // Fit through the origin against arccos(1 - 2 rho^2).
    double num = 0.0, den = 0.0, mean = 0.0;
    std::vector<double> gs;
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        double gval = std::acos(1.0 - 2.0 * rhos[k] * rhos[k]);
        gs.push_back(gval);
        num += targets[k] * gval;
        den += gval * gval;
        mean += targets[k];
    }
    mean /= targets.size();
    LensFit fit;
    fit.kappa = num / den;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t k = 0; k < rhos.size(); ++k) {
        double r1 = targets[k] - fit.kappa * gs[k];
        double r2 = targets[k] - mean;
        ss_res += r1 * r1;
        ss_tot += r2 * r2;
    }
    fit.r_squared = 1.0 - ss_res / ss_tot;
    return fit;
}

AsymptoticConstant asymptotic_constant(const KernelSpec& spec, int depth) {
    std::vector<double> eps, vals;
    for (double R : kAsymptoticRs) {
        eps.push_back(1.0 - R * R);
        vals.push_back((1.0 - R * R) * variance_geometric(spec, R, depth));
    }
    // The sequence runs from R=0.9 down in eps; it should increase toward
    // the limit as eps decreases.
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] < vals[i - 1] * (1.0 - 1e-3)) {
            std::ostringstream msg;
            msg << "asymptotic_constant: non-monotone sequence:";
            for (double v : vals) msg << " " << v;
            throw ConvergenceError(msg.str());
        }
    }
    AsymptoticConstant out;
    out.c_extrapolated = ls_intercept(eps, vals);
    LensFit fit = measure_lens_kappa(depth);
    out.kappa = fit.kappa;

    QuadratureGrid g = halfplane_grid(kDefaultRmax, depth);
    Abs2Evaluator abs2(spec);
    const HalfPlanePoint base = HalfPlanePoint::identity();
    double integral = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double r = rho(g.nodes[i], base);
        integral +=
            g.weights[i] * abs2.at(g.nodes[i]) * std::acos(1.0 - 2.0 * r * r);
    }
    out.c_integral = fit.kappa * integral;
    return out;
}

BoundsReport bounds_report(const KernelSpec& spec, double R, int depth) {
    BoundsReport rep;
    rep.R = R;
    rep.normalization = spec.normalization();
    rep.v_geometric = variance_geometric(spec, R, depth);
    rep.v_double = variance_double(spec, R, depth);

    const double C = admissibility(spec);
    const double area = disc_area(R);
    KernelSpec pspec = spec.with_normalization(Normalization::Projection);
    ConcentrationOperator op =
        build_operator(pspec, HyperbolicDisc(HalfPlanePoint::identity(), R), depth);
    TraceReport tr = traces(op);
    const bool diag = spec.normalization() == Normalization::Diagonal1;
    // tr and variance of the operator live in the Projection normalization;
    // the variance scales by C^2 between normalizations, the intensity by C.
    rep.v_trace = diag ? tr.variance * C * C : tr.variance;
    rep.expected = diag ? tr.expected * C : tr.expected;
    rep.bound_area = rep.expected;
    rep.bound_admissible = diag ? C * area : area / C;
    rep.variance_le_expected = tr.variance <= tr.expected * (1.0 + 1e-12);
    double v_diag = diag ? rep.v_geometric : rep.v_geometric * C * C;
    rep.variance_le_area_bound = v_diag <= C * area * (1.0 + 1e-9);
    return rep;
}

std::vector<std::pair<double, double>> variance_ratio_sweep(
    const KernelSpec& spec, const std::vector<double>& Rs, int depth) {
    std::vector<std::pair<double, double>> out;
    KernelSpec pspec = spec.with_normalization(Normalization::Projection);
    for (double R : Rs) {
        ConcentrationOperator op = build_operator(
            pspec, HyperbolicDisc(HalfPlanePoint::identity(), R), depth);
        TraceReport tr = traces(op);
        out.emplace_back(R, tr.variance / tr.expected);
    }
    return out;
}

}  // namespace affine
