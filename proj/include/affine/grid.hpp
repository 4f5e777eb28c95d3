#ifndef AFFINE_GRID_HPP
#define AFFINE_GRID_HPP

#include <complex>
#include <functional>
#include <vector>

#include "affine/geometry.hpp"

namespace affine {

struct RegionDesc {
    enum class Kind { Disc, HalfPlaneTruncated, Annulus };
    Kind kind = Kind::Disc;
    HalfPlanePoint center;    // i for HalfPlaneTruncated/Annulus
    double R = 0.5;           // outer pseudohyperbolic radius
    double R_inner = 0.0;     // Annulus only
};

// Quadrature grid against the hyperbolic measure dmu+ = s^{-2} dx ds.
// Nodes are laid out ring-major: ring r holds nodes [r*n_theta, (r+1)*n_theta).
// All nodes of a ring share the pseudohyperbolic radius ring_rho[r]
// measured from the region center.
struct QuadratureGrid {
    std::vector<HalfPlanePoint> nodes;
    std::vector<double> weights;  // include the dmu+ density
    RegionDesc region;
    int depth = 1;
    int n_theta = 0;
    std::vector<double> ring_rho;

    std::size_t size() const { return nodes.size(); }
    int n_rings() const { return static_cast<int>(ring_rho.size()); }
};

// Polar grid over the pseudohyperbolic disc D(center,R): Gauss-Legendre
// in the radial area coordinate a = r^2/(1-r^2) (composite geometric
// panels), uniform in angle, pulled back through Cayley and recentered
// by a disc automorphism.
QuadratureGrid disc_grid(const HalfPlanePoint& center, double R, int depth);

// Same, with independent control of the angular refinement level.
QuadratureGrid disc_grid(const HalfPlanePoint& center, double R, int depth,
                         int angular_depth);

// Truncation of the full half-plane: a disc grid of radius R_max about i.
// Callers must supply integrands with known decay.
QuadratureGrid halfplane_grid(double R_max, int depth);

// Grid over the annulus {R_in < rho(w,i) < R_out} about i; used for
// disc-complement integrals.
QuadratureGrid annulus_grid(double R_in, double R_out, int depth);
QuadratureGrid annulus_grid(double R_in, double R_out, int depth,
                            int angular_depth);

std::complex<double> integrate(
    const std::function<std::complex<double>(const HalfPlanePoint&)>& f,
    const QuadratureGrid& g);

double integrate_real(const std::function<double(const HalfPlanePoint&)>& f,
                      const QuadratureGrid& g);

// Hyperbolic area of D(w,R) \ D(i,R), by integrating the indicator of
// {rho(.,i) >= R} over a grid on D(w,R) with boosted angular resolution.
double lens_area(const HalfPlanePoint& w, double R, int depth);

}  // namespace affine

#endif
