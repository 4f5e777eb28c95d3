#ifndef AFFINE_GEOMETRY_HPP
#define AFFINE_GEOMETRY_HPP

#include <complex>

namespace affine {

using Complex = std::complex<double>;

// A point z = x + i s of the upper half-plane, doubling as an element
// (x,s) of the ax+b group.
struct HalfPlanePoint {
    double x = 0.0;
    double s = 1.0;  // > 0

    HalfPlanePoint() = default;
    HalfPlanePoint(double x_, double s_);
    explicit HalfPlanePoint(Complex z);

    Complex z() const { return {x, s}; }
    static HalfPlanePoint identity() { return {0.0, 1.0}; }
};

// Point of the unit disc model.
struct DiskPoint {
    Complex u;  // |u| < 1
    DiskPoint() = default;
    explicit DiskPoint(Complex u_);
};

// Orientation-preserving fractional linear map, normalized to det 1.
struct MobiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    MobiusMap() = default;
    MobiusMap(double a_, double b_, double c_, double d_);
};

struct HyperbolicDisc {
    HalfPlanePoint center;
    double R = 0.5;  // pseudohyperbolic radius, 0 < R < 1
    HyperbolicDisc() = default;
    HyperbolicDisc(HalfPlanePoint center_, double R_);
    bool contains(const HalfPlanePoint& w) const;
};

// ax+b group operations, (x,s).(x',s') = (x+sx', ss').
HalfPlanePoint group_mul(const HalfPlanePoint& g1, const HalfPlanePoint& g2);
HalfPlanePoint group_inv(const HalfPlanePoint& g);

// Pseudohyperbolic distance |(z1-z2)/(z1-conj(z2))| in [0,1).
double rho(const HalfPlanePoint& z1, const HalfPlanePoint& z2);

// Hyperbolic distance 2 atanh(rho).
double hyp_dist(const HalfPlanePoint& z1, const HalfPlanePoint& z2);

// Cayley transform z -> (z-i)/(z+i) and its inverse.
DiskPoint cayley(const HalfPlanePoint& z);
HalfPlanePoint cayley_inv(const DiskPoint& u);

HalfPlanePoint mobius(const MobiusMap& m, const HalfPlanePoint& z);

// Hyperbolic area of a pseudohyperbolic disc of radius R,
// 4 pi R^2 / (1 - R^2); independent of the center.
double disc_area(double R);

// Disc automorphism u -> (u + u0)/(1 + conj(u0) u), a hyperbolic
// isometry of the disc model sending 0 to u0.
DiskPoint disc_translate(const DiskPoint& u0, const DiskPoint& u);

}  // namespace affine

#endif
