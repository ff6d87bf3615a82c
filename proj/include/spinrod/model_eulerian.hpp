#pragma once

#include <stdexcept>

#include "spinrod/linalg.hpp"
#include "spinrod/params.hpp"
#include "spinrod/rotation.hpp"
#include "spinrod/state.hpp"

namespace spinrod {

// Pointwise physics of the inflow-outflow set-up on the fixed spatial domain.
// The flux split mirrors the material scheme: convective terms upwinded from
// the left (u > 0 everywhere for spinning flows), contact-force multipliers
// downwinded, viscous difference quotients central. The angular block keeps
// the conserved product P2 A^2 omega as its z rows, so fluxes and sources
// below are the plain rows of the governing system without premultiplication.

inline void check_area(double A) {
    if (!(A > 0)) throw std::domain_error("eulerian model: area must be positive");
}

// --------------------------------------------------------------------------
// 3d
// --------------------------------------------------------------------------

inline EulerianState3D::Row eul_flux_up(const EulerianState3D& s,
                                        const DimensionlessParams& p) {
    check_area(s.A);
    EulerianState3D::Row f{};
    f[0] = s.v[0];
    f[1] = s.v[1];
    f[2] = s.v[2] - s.u;
    f[10] = s.omega[0] - s.u * s.kappa[0];
    f[11] = s.omega[1] - s.u * s.kappa[1];
    f[12] = s.omega[2] - s.u * s.kappa[2];
    f[13] = -s.u * s.A;
    f[14] = -s.u * s.A * s.v[0];
    f[15] = -s.u * s.A * s.v[1];
    f[16] = -s.u * s.A * s.v[2];
    const double A2 = s.A * s.A;
    const Vec3 conv = -s.u * (kP2 * (A2 * s.omega));
    const Vec3 visc = 3.0 / p.Re * A2 * (kP23 * cross(s.kappa, s.omega));
    f[17] = conv[0] + visc[0];
    f[18] = conv[1] + visc[1];
    f[19] = conv[2] + visc[2];
    return f;
}

inline EulerianState3D::Row eul_flux_down(const EulerianState3D& s,
                                          const DimensionlessParams& p) {
    EulerianState3D::Row f{};
    f[14] = s.n1 / p.Re;
    f[15] = s.n2 / p.Re;
    return f;
}

inline EulerianState3D::Row eul_flux_central_at(const EulerianState3D& at,
                                                const EulerianState3D& left,
                                                const EulerianState3D& right,
                                                double d,
                                                const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("eul_flux_central: cell size must be positive");
    check_area(at.A);
    EulerianState3D::Row f{};
    const double du = (right.u - left.u) / d;
    const Vec3 dom = {(right.omega[0] - left.omega[0]) / d,
                      (right.omega[1] - left.omega[1]) / d,
                      (right.omega[2] - left.omega[2]) / d};
    f[16] = 3.0 / p.Re * at.A * du;
    const Vec3 m = 3.0 / p.Re * at.A * at.A * (kP23 * dom);
    f[17] = m[0];
    f[18] = m[1];
    f[19] = m[2];
    return f;
}

inline EulerianState3D mean_state(const EulerianState3D& a, const EulerianState3D& b) {
    auto pa = a.pack(), pb = b.pack();
    EulerianState3D::Row m{};
    for (int i = 0; i < EulerianState3D::kComp; ++i) m[i] = 0.5 * (pa[i] + pb[i]);
    return EulerianState3D::unpack(m);
}

/// Full numerical edge flux H(phi_L, phi_R) = upwind(L) + downwind(R) +
/// central(mean, difference quotient). Rejects reversed intrinsic flow.
inline EulerianState3D::Row eul_edge_flux(const EulerianState3D& left,
                                          const EulerianState3D& right,
                                          double d,
                                          const DimensionlessParams& p) {
    if (left.u < 0 || right.u < 0)
        throw std::domain_error("eul_edge_flux: negative intrinsic velocity "
                                "(upwind direction assumes u >= 0)");
    auto f = eul_flux_up(left, p);
    const auto fd = eul_flux_down(right, p);
    const auto fc = eul_flux_central_at(mean_state(left, right), left, right, d, p);
    for (int i = 0; i < EulerianState3D::kComp; ++i) f[i] += fd[i] + fc[i];
    return f;
}

/// Source terms: kinematic couplings, the kappa-coupled parts of the material
/// laws with backward-differenced d_s u / d_s omega, rotating-frame forces
/// and couples.
inline EulerianState3D::Row eul_source(const EulerianState3D& prev,
                                       const EulerianState3D& cur,
                                       double d,
                                       const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("eul_source: cell size must be positive");
    check_area(cur.A);
    EulerianState3D::Row out{};
    const Mat3 R = rot_from_quat_unchecked(cur.q);
    const Vec3 rot_axis = R.col(0);
    const double du = (cur.u - prev.u) / d;
    const Vec3 dom = {(cur.omega[0] - prev.omega[0]) / d,
                      (cur.omega[1] - prev.omega[1]) / d,
                      (cur.omega[2] - prev.omega[2]) / d};

    // constraint rows: kappa x v + e3 x omega
    const Vec3 c0 = cross(cur.kappa, cur.v) + Vec3{-cur.omega[1], cur.omega[0], 0.0};
    out[0] = c0[0];
    out[1] = c0[1];
    out[2] = c0[2];

    // center-line rows: R^T (v - u e3)
    const Vec3 rr = R.tmul(Vec3{cur.v[0], cur.v[1], cur.v[2] - cur.u});
    out[3] = rr[0];
    out[4] = rr[1];
    out[5] = rr[2];

    // quaternion rows with the convected effective rate
    const Vec3 weff = cur.omega - cur.u * cur.kappa;
    const Vec4 qr = quat_rate(weff, cur.q);
    out[6] = qr[0];
    out[7] = qr[1];
    out[8] = qr[2];
    out[9] = qr[3];

    // curvature rows
    const Vec3 ko = cross(cur.kappa, cur.omega);
    out[10] = ko[0];
    out[11] = ko[1];
    out[12] = ko[2];

    // momentum rows; n3 = 3 A d_s u enters via the backward difference
    Vec3 mom = 1.0 / p.Re * cross(cur.kappa, Vec3{cur.n1, cur.n2, 3.0 * cur.A * du});
    mom += cur.A * cross(cur.v, cur.omega);
    mom += -(p.Fr_inv * p.Fr_inv) * cur.A * rot_axis;  // e_g = -e_Omega
    mom += -2.0 * p.Rb_inv * cur.A * cross(rot_axis, cur.v);
    mom += (p.Rb_inv * p.Rb_inv) * cur.A * (R * Vec3{0.0, cur.r[1], cur.r[2]});
    out[14] = mom[0];
    out[15] = mom[1];
    out[16] = mom[2];

    // angular rows (conserved-product form, no premultiplication)
    const double A2 = cur.A * cur.A;
    const Vec3 b = p.Rb_inv * rot_axis;
    const Vec3 afull = cur.omega + b;
    const Vec3 l_omega = A2 * cross(kP2 * afull, afull) +
                         kP2 * (A2 * cross(cur.omega, b) + p.Rb_inv * A2 * du * rot_axis);
    Vec3 ang = 3.0 / p.Re * A2 * cross(cur.kappa, kP23 * dom);
    ang += 3.0 / p.Re * A2 * cross(cur.kappa, kP23 * cross(cur.kappa, cur.omega));
    ang += 16.0 / (p.eps * p.eps * p.Re) * Vec3{-cur.n2, cur.n1, 0.0};
    ang += l_omega;
    out[17] = ang[0];
    out[18] = ang[1];
    out[19] = ang[2];
    return out;
}

/// Inflow boundary state at s = 0: unit feed velocity and area, straight
/// radial extrusion.
inline EulerianState3D eul_inflow_state3d() {
    EulerianState3D s;
    s.u = 1;
    s.r = {0, 1, 0};
    s.q = nozzle_quaternion();
    s.kappa = {0, 0, 0};
    s.A = 1;
    s.v = {0, 0, 1};
    s.omega = {0, 0, 0};
    return s;
}

/// Straight jet leaving the nozzle perpendicularly, evaluated at arc length s.
inline EulerianState3D eul_initial_state3d(double s, const DimensionlessParams& p) {
    if (s < 0 || s > p.ell)
        throw std::domain_error("eul_initial_state: arc length outside [0, ell]");
    EulerianState3D st = eul_inflow_state3d();
    st.r = {0, 1 + s, 0};  // nozzle position plus s along the outer tangent image
    return st;
}

// --------------------------------------------------------------------------
// 2d
// --------------------------------------------------------------------------

inline EulerianState2D::Row eul_flux_up(const EulerianState2D& s,
                                        const DimensionlessParams&) {
    check_area(s.A);
    EulerianState2D::Row f{};
    f[0] = s.v[0];
    f[1] = s.v[1] - s.u;
    f[5] = s.omega - s.u * s.kappa;
    f[6] = -s.u * s.A;
    f[7] = -s.u * s.A * s.v[0];
    f[8] = -s.u * s.A * s.v[1];
    f[9] = -s.u * s.A * s.A * s.omega;
    return f;
}

inline EulerianState2D::Row eul_flux_down(const EulerianState2D& s,
                                          const DimensionlessParams& p) {
    EulerianState2D::Row f{};
    f[7] = s.n1 / p.Re;
    return f;
}

inline EulerianState2D::Row eul_flux_central_at(const EulerianState2D& at,
                                                const EulerianState2D& left,
                                                const EulerianState2D& right,
                                                double d,
                                                const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("eul_flux_central: cell size must be positive");
    check_area(at.A);
    EulerianState2D::Row f{};
    f[8] = 3.0 / p.Re * at.A * (right.u - left.u) / d;
    f[9] = 3.0 / p.Re * at.A * at.A * (right.omega - left.omega) / d;
    return f;
}

inline EulerianState2D mean_state(const EulerianState2D& a, const EulerianState2D& b) {
    auto pa = a.pack(), pb = b.pack();
    EulerianState2D::Row m{};
    for (int i = 0; i < EulerianState2D::kComp; ++i) m[i] = 0.5 * (pa[i] + pb[i]);
    return EulerianState2D::unpack(m);
}

inline EulerianState2D::Row eul_edge_flux(const EulerianState2D& left,
                                          const EulerianState2D& right,
                                          double d,
                                          const DimensionlessParams& p) {
    if (left.u < 0 || right.u < 0)
        throw std::domain_error("eul_edge_flux: negative intrinsic velocity "
                                "(upwind direction assumes u >= 0)");
    auto f = eul_flux_up(left, p);
    const auto fd = eul_flux_down(right, p);
    const auto fc = eul_flux_central_at(mean_state(left, right), left, right, d, p);
    for (int i = 0; i < EulerianState2D::kComp; ++i) f[i] += fd[i] + fc[i];
    return f;
}

inline EulerianState2D::Row eul_source(const EulerianState2D& prev,
                                       const EulerianState2D& cur,
                                       double d,
                                       const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("eul_source: cell size must be positive");
    check_area(cur.A);
    EulerianState2D::Row out{};
    const Mat2 R = rot2d(cur.alpha);
    const double du = (cur.u - prev.u) / d;

    out[0] = -cur.kappa * cur.v[1] + cur.omega;
    out[1] = cur.kappa * cur.v[0];

    const Vec2 rr = R.tmul(Vec2{cur.v[0], cur.v[1] - cur.u});
    out[2] = rr[0];
    out[3] = rr[1];

    out[4] = cur.omega - cur.u * cur.kappa;
    out[5] = 0;
    out[6] = 0;

    Vec2 mom = {1.0 / p.Re * cur.kappa * -(3.0 * cur.A * du),
                1.0 / p.Re * cur.kappa * cur.n1};
    const Vec2 vperp = perp(cur.v);
    mom += -cur.A * cur.omega * vperp;
    mom += -2.0 * p.Rb_inv * cur.A * vperp;
    mom += (p.Rb_inv * p.Rb_inv) * cur.A * (R * cur.r);
    out[7] = mom[0];
    out[8] = mom[1];

    out[9] = -16.0 / (p.eps * p.eps * p.Re) * cur.n1 +
             p.Rb_inv * cur.A * cur.A * du;
    return out;
}

inline EulerianState2D eul_inflow_state2d() {
    EulerianState2D s;
    s.u = 1;
    s.r = {1, 0};
    s.alpha = 0;
    s.kappa = 0;
    s.A = 1;
    s.v = {0, 1};
    s.omega = 0;
    return s;
}

inline EulerianState2D eul_initial_state2d(double s, const DimensionlessParams& p) {
    if (s < 0 || s > p.ell)
        throw std::domain_error("eul_initial_state: arc length outside [0, ell]");
    EulerianState2D st = eul_inflow_state2d();
    st.r = {1 + s, 0};
    return st;
}

}  // namespace spinrod
