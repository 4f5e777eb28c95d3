#include "affine/grid.hpp"

#include <cmath>
#include <sstream>

#include "affine/errors.hpp"
#include "affine/specfun.hpp"

namespace affine {

namespace {

// Radial area coordinate: a = r^2/(1-r^2), so that the hyperbolic
// measure on the disc model is 2 da dtheta.
double area_coord(double r) { return r * r / (1.0 - r * r); }

double radius_from_area(double a) { return std::sqrt(a / (1.0 + a)); }

// Composite Gauss-Legendre in a over geometric panels: panel widths
// roughly double as 1+a doubles, matching the algebraic decay of the
// kernel integrands.
GaussRule radial_rule(double a_in, double a_out, int depth) {
    std::vector<double> edges{a_in};
    double e = a_in;
    while (e < a_out) {
        e = std::min(a_out, 2.0 * (e + 1.0) - 1.0);
        edges.push_back(e);
    }
    const int m = 4 << (depth - 1);  // nodes per panel
    GaussRule base = gauss_legendre(m);
    GaussRule rule;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double lo = edges[p], hi = edges[p + 1];
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < m; ++i) {
            rule.nodes.push_back(mid + half * base.nodes[i]);
            rule.weights.push_back(half * base.weights[i]);
        }
    }
    return rule;
}

QuadratureGrid polar_grid(const HalfPlanePoint& center, double R_in, double R_out,
                          int depth, int angular_depth, RegionDesc::Kind kind) {
    if (depth < 1) throw std::domain_error("grid: depth must be >= 1");
    if (!(R_out > 0.0 && R_out < 1.0) || R_in < 0.0 || R_in >= R_out)
        throw std::domain_error("grid: radii must satisfy 0 <= R_in < R_out < 1");
    double a_out = area_coord(R_out);
    if (!std::isfinite(a_out) || 1.0 - R_out < 1e-12) {
        std::ostringstream msg;
        msg << "grid: R = " << R_out
            << " too close to 1 for stable weights; reduce R or raise depth";
        throw ResolutionError(msg.str());
    }
    GaussRule rad = radial_rule(area_coord(R_in), a_out, depth);
    const int n_theta = 8 << angular_depth;
    const double dtheta = 2.0 * M_PI / n_theta;

    DiskPoint u0 = cayley(center);
    QuadratureGrid g;
    g.region.kind = kind;
    g.region.center = center;
    g.region.R = R_out;
    g.region.R_inner = R_in;
    g.depth = depth;
    g.n_theta = n_theta;
    g.nodes.reserve(rad.nodes.size() * n_theta);
    g.weights.reserve(rad.nodes.size() * n_theta);
    g.ring_rho.reserve(rad.nodes.size());
    for (std::size_t j = 0; j < rad.nodes.size(); ++j) {
        double r = radius_from_area(rad.nodes[j]);
        g.ring_rho.push_back(r);
        double w = 2.0 * rad.weights[j] * dtheta;
        for (int k = 0; k < n_theta; ++k) {
            double theta = dtheta * (k + 0.5);
            DiskPoint u;
            u.u = std::polar(r, theta);
            g.nodes.push_back(cayley_inv(disc_translate(u0, u)));
            g.weights.push_back(w);
        }
    }
    return g;
}

}  // namespace

QuadratureGrid disc_grid(const HalfPlanePoint& center, double R, int depth) {
    return disc_grid(center, R, depth, depth);
}

QuadratureGrid disc_grid(const HalfPlanePoint& center, double R, int depth,
                         int angular_depth) {
    return polar_grid(center, 0.0, R, depth, angular_depth, RegionDesc::Kind::Disc);
}

QuadratureGrid halfplane_grid(double R_max, int depth) {
    return polar_grid(HalfPlanePoint::identity(), 0.0, R_max, depth, depth,
                      RegionDesc::Kind::HalfPlaneTruncated);
}

QuadratureGrid annulus_grid(double R_in, double R_out, int depth) {
    return annulus_grid(R_in, R_out, depth, depth);
}

QuadratureGrid annulus_grid(double R_in, double R_out, int depth,
                            int angular_depth) {
    return polar_grid(HalfPlanePoint::identity(), R_in, R_out, depth, angular_depth,
                      RegionDesc::Kind::Annulus);
}

std::complex<double> integrate(
    const std::function<std::complex<double>(const HalfPlanePoint&)>& f,
    const QuadratureGrid& g) {
    std::complex<double> sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        std::complex<double> v = f(g.nodes[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand at node " << i << " (z = "
                << g.nodes[i].x << " + " << g.nodes[i].s << "i)";
            throw EvaluationError(msg.str());
        }
        std::complex<double> y = v * g.weights[i] - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double integrate_real(const std::function<double(const HalfPlanePoint&)>& f,
                      const QuadratureGrid& g) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double v = f(g.nodes[i]);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand at node " << i << " (z = "
                << g.nodes[i].x << " + " << g.nodes[i].s << "i)";
            throw EvaluationError(msg.str());
        }
        double y = v * g.weights[i] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double lens_area(const HalfPlanePoint& w, double R, int depth) {
    // Indicator integrand: boost the angular resolution two levels.
    QuadratureGrid g = disc_grid(w, R, depth, depth + 2);
    const HalfPlanePoint base = HalfPlanePoint::identity();
    return integrate_real(
        [&](const HalfPlanePoint& z) { return rho(z, base) >= R ? 1.0 : 0.0; }, g);
}

}  // namespace affine
