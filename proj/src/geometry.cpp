#include "affine/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace affine {

HalfPlanePoint::HalfPlanePoint(double x_, double s_) : x(x_), s(s_) {
    if (!(s > 0.0) || !std::isfinite(x) || !std::isfinite(s))
        throw std::domain_error("HalfPlanePoint: requires finite x and s > 0");
}

HalfPlanePoint::HalfPlanePoint(Complex z) : HalfPlanePoint(z.real(), z.imag()) {}

DiskPoint::DiskPoint(Complex u_) : u(u_) {
    if (!(std::abs(u) < 1.0))
        throw std::domain_error("DiskPoint: requires |u| < 1");
}

MobiusMap::MobiusMap(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
    double det = a_ * d_ - b_ * c_;
    if (det <= 0.0)
        throw std::domain_error(
            "MobiusMap: must be orientation-preserving (det > 0)");
    double r = std::sqrt(det);
    a /= r; b /= r; c /= r; d /= r;
}

HyperbolicDisc::HyperbolicDisc(HalfPlanePoint center_, double R_)
    : center(center_), R(R_) {
    if (!(R > 0.0 && R < 1.0))
        throw std::domain_error("HyperbolicDisc: R must lie in (0,1)");
}

bool HyperbolicDisc::contains(const HalfPlanePoint& w) const {
    return rho(w, center) < R;
}

HalfPlanePoint group_mul(const HalfPlanePoint& g1, const HalfPlanePoint& g2) {
    return {g1.x + g1.s * g2.x, g1.s * g2.s};
}

HalfPlanePoint group_inv(const HalfPlanePoint& g) {
    return {-g.x / g.s, 1.0 / g.s};
}

double rho(const HalfPlanePoint& z1, const HalfPlanePoint& z2) {
    Complex a = z1.z() - z2.z();
    Complex b = z1.z() - std::conj(z2.z());
    return std::abs(a) / std::abs(b);
}

double hyp_dist(const HalfPlanePoint& z1, const HalfPlanePoint& z2) {
    double r = rho(z1, z2);
    return std::log((1.0 + r) / (1.0 - r));
}

DiskPoint cayley(const HalfPlanePoint& z) {
    const Complex i{0.0, 1.0};
    DiskPoint u;
    u.u = (z.z() - i) / (z.z() + i);
    return u;
}

HalfPlanePoint cayley_inv(const DiskPoint& u) {
    const Complex i{0.0, 1.0};
    Complex z = i * (1.0 + u.u) / (1.0 - u.u);
    return HalfPlanePoint(z);
}

HalfPlanePoint mobius(const MobiusMap& m, const HalfPlanePoint& z) {
    if (m.a * m.d - m.b * m.c <= 0.0)
        throw std::domain_error("mobius: map must be orientation-preserving (det > 0)");
    Complex w = (m.a * z.z() + m.b) / (m.c * z.z() + m.d);
    return HalfPlanePoint(w);
}

double disc_area(double R) {
    if (!(R > 0.0 && R < 1.0))
        throw std::domain_error("disc_area: R must lie in (0,1)");
    return 4.0 * M_PI * R * R / (1.0 - R * R);
}

DiskPoint disc_translate(const DiskPoint& u0, const DiskPoint& u) {
    DiskPoint r;
    r.u = (u.u + u0.u) / (1.0 + std::conj(u0.u) * u.u);
    return r;
}

}  // namespace affine
