#pragma once

#include <stdexcept>

#include "spinrod/linalg.hpp"
#include "spinrod/params.hpp"
#include "spinrod/rotation.hpp"
#include "spinrod/state.hpp"

namespace spinrod {

// Pointwise physics of the inflow set-up with enlarging material domain.
//
// The governing system is split as
//   d/dt z(phi) = d_sigma f^u + d_sigma f^d + d_sigma f^c + p + q
// with f^u upwinded, f^d downwinded, f^c central (viscous difference
// quotients), p the viscous source evaluated with backward differences and q
// the remaining pointwise sources. Row layout follows the state packing.

/// Stress-free end values, n = 0 and m = 0. The end-edge downwind and central
/// fluxes built from these vanish identically.
struct FreeEndValues {
    Vec3 n{};
    Vec3 m{};
};
inline FreeEndValues lag_free_end_values() { return {}; }

// --------------------------------------------------------------------------
// 3d
// --------------------------------------------------------------------------

inline void check_elongation(double e) {
    if (!(e > 0)) throw std::domain_error("lagrangian model: elongation must be positive");
}

/// Upwinded flux f^u(phi) = (v, 0_7, e varpi, 0_2, 3/(Re e^2) (k1 v2 - k2 v1),
/// 3/(Re e^2) P_{1/3} (kappa x varpi)).
inline LagrangianState3D::Row lag_flux_up(const LagrangianState3D& s,
                                          const DimensionlessParams& p) {
    check_elongation(s.e);
    LagrangianState3D::Row f{};
    f[0] = s.v[0];
    f[1] = s.v[1];
    f[2] = s.v[2];
    f[10] = s.e * s.varpi[0];
    f[11] = s.e * s.varpi[1];
    f[12] = s.e * s.varpi[2];
    const double c = 3.0 / (p.Re * s.e * s.e);
    f[15] = c * (s.kappa[0] * s.v[1] - s.kappa[1] * s.v[0]);
    const Vec3 kv = kP13 * cross(s.kappa, s.varpi);
    f[16] = c * kv[0];
    f[17] = c * kv[1];
    f[18] = c * kv[2];
    return f;
}

/// Downwinded flux f^d(phi) = (0_13, n1/Re, n2/Re, 0_4).
inline LagrangianState3D::Row lag_flux_down(const LagrangianState3D& s,
                                            const DimensionlessParams& p) {
    LagrangianState3D::Row f{};
    f[13] = s.n1 / p.Re;
    f[14] = s.n2 / p.Re;
    return f;
}

/// Central flux f^c evaluated at `at` with the difference quotient of
/// h(phi) = (0_15, v3, e varpi) between `left` and `right` over `d`.
inline LagrangianState3D::Row lag_flux_central_at(const LagrangianState3D& at,
                                                  const LagrangianState3D& left,
                                                  const LagrangianState3D& right,
                                                  double d,
                                                  const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("lag_flux_central: cell size must be positive");
    check_elongation(at.e);
    LagrangianState3D::Row f{};
    const double dv3 = (right.v[2] - left.v[2]) / d;
    const Vec3 dom = {(right.e * right.varpi[0] - left.e * left.varpi[0]) / d,
                      (right.e * right.varpi[1] - left.e * left.varpi[1]) / d,
                      (right.e * right.varpi[2] - left.e * left.varpi[2]) / d};
    f[15] = 3.0 / (p.Re * at.e * at.e) * dv3;
    const Vec3 m = kP13 * dom;
    const double c = 3.0 / (p.Re * at.e * at.e * at.e);
    f[16] = c * m[0];
    f[17] = c * m[1];
    f[18] = c * m[2];
    return f;
}

inline LagrangianState3D mean_state(const LagrangianState3D& a, const LagrangianState3D& b) {
    auto pa = a.pack(), pb = b.pack();
    LagrangianState3D::Row m{};
    for (int i = 0; i < LagrangianState3D::kComp; ++i) m[i] = 0.5 * (pa[i] + pb[i]);
    return LagrangianState3D::unpack(m);
}

/// Numerical central flux H^c(phi_i, phi_{i+1}) at an interior edge: f^c at
/// the arithmetic mean state with the difference quotient over d.
inline LagrangianState3D::Row lag_flux_central(const LagrangianState3D& left,
                                               const LagrangianState3D& right,
                                               double d,
                                               const DimensionlessParams& p) {
    return lag_flux_central_at(mean_state(left, right), left, right, d, p);
}

/// Viscous source P(phi_{i-1}, phi_i): the kappa-coupled parts of the material
/// laws evaluated at the cell state with backward difference quotients.
inline LagrangianState3D::Row lag_source_p(const LagrangianState3D& prev,
                                           const LagrangianState3D& cur,
                                           double d,
                                           const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("lag_source_p: cell size must be positive");
    check_elongation(cur.e);
    LagrangianState3D::Row out{};
    const double dv3 = (cur.v[2] - prev.v[2]) / d;
    const Vec3 dom = {(cur.e * cur.varpi[0] - prev.e * prev.varpi[0]) / d,
                      (cur.e * cur.varpi[1] - prev.e * prev.varpi[1]) / d,
                      (cur.e * cur.varpi[2] - prev.e * prev.varpi[2]) / d};
    const double e2 = cur.e * cur.e;
    // kappa x (0, 0, n3') carries 1/e^2 from the material law n3.
    const Vec3 a = 3.0 / (p.Re * e2) * cross(cur.kappa, Vec3{0, 0, dv3});
    out[13] = a[0];
    out[14] = a[1];
    out[15] = a[2];
    const Vec3 b =
        3.0 / (p.Re * e2 * cur.e) * (kPHalf * cross(cur.kappa, kP23 * dom));
    out[16] = b[0];
    out[17] = b[1];
    out[18] = b[2];
    return out;
}

/// Remaining sources q(phi): kinematic couplings, rotating-frame forces and
/// couples, gravity. d_t e inside l_Omega is eliminated by the strain-rate
/// identity with the same backward difference as the p source.
inline LagrangianState3D::Row lag_source_q(const LagrangianState3D& prev,
                                           const LagrangianState3D& cur,
                                           double d,
                                           const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("lag_source_q: cell size must be positive");
    check_elongation(cur.e);
    LagrangianState3D::Row out{};
    const Vec3 omega = cur.e * cur.varpi;
    const Mat3 R = rot_from_quat_unchecked(cur.q);
    const Vec3 rot_axis = R.col(0);  // director components of e_Omega

    // compatibility rows: kappa x v + e (e3 x omega)
    const Vec3 c0 = cross(cur.kappa, cur.v) + cur.e * Vec3{-omega[1], omega[0], 0.0};
    out[0] = c0[0];
    out[1] = c0[1];
    out[2] = c0[2];

    // center-line rows: R^T v (outer components of the velocity)
    const Vec3 rr = R.tmul(cur.v);
    out[3] = rr[0];
    out[4] = rr[1];
    out[5] = rr[2];

    // quaternion rows
    const Vec4 qr = quat_rate(omega, cur.q);
    out[6] = qr[0];
    out[7] = qr[1];
    out[8] = qr[2];
    out[9] = qr[3];

    // curvature rows
    const Vec3 ko = cross(cur.kappa, omega);
    out[10] = ko[0];
    out[11] = ko[1];
    out[12] = ko[2];

    // momentum rows
    const double e2 = cur.e * cur.e;
    const double n3a = 3.0 / e2 * (cur.kappa[0] * cur.v[1] - cur.kappa[1] * cur.v[0]);
    Vec3 mom = 1.0 / p.Re * cross(cur.kappa, Vec3{cur.n1, cur.n2, n3a});
    mom += cross(cur.v, omega);
    mom += -(p.Fr_inv * p.Fr_inv) * rot_axis;  // e_g = -e_Omega
    mom += -2.0 * p.Rb_inv * cross(rot_axis, cur.v);
    mom += (p.Rb_inv * p.Rb_inv) * (R * Vec3{0.0, cur.r[1], cur.r[2]});
    out[13] = mom[0];
    out[14] = mom[1];
    out[15] = mom[2];

    // angular rows (pre-multiplied by P_{1/2})
    const double dte = (cur.v[2] - prev.v[2]) / d +
                       cur.kappa[0] * cur.v[1] - cur.kappa[1] * cur.v[0];
    const Vec3 b = p.Rb_inv * rot_axis;
    const Vec3 afull = omega + b;
    const Vec3 l_omega = 1.0 / cur.e * cross(kP2 * afull, afull) +
                         kP2 * (1.0 / cur.e * cross(omega, b) + dte / e2 * b);
    Vec3 ang = 3.0 / (p.Re * e2 * cur.e) *
               (kPHalf * cross(cur.kappa, kP23 * cross(cur.kappa, omega)));
    ang += 16.0 / (p.eps * p.eps * p.Re) * cur.e *
           (kPHalf * Vec3{-cur.n2, cur.n1, 0.0});
    ang += kPHalf * l_omega;
    out[16] = ang[0];
    out[17] = ang[1];
    out[18] = ang[2];
    return out;
}

/// Nozzle boundary state: unit elongation, straight radial extrusion at unit
/// speed. The multipliers are not imposed here; the nozzle-edge downwind flux
/// takes them one-sidedly from the first cell.
inline LagrangianState3D lag_nozzle_state3d() {
    LagrangianState3D s;
    s.e = 1;
    s.r = {0, 1, 0};
    s.q = nozzle_quaternion();
    s.kappa = {0, 0, 0};
    s.v = {0, 0, 1};
    s.varpi = {0, 0, 0};
    return s;
}

// --------------------------------------------------------------------------
// 2d
// --------------------------------------------------------------------------

inline LagrangianState2D::Row lag_flux_up(const LagrangianState2D& s,
                                          const DimensionlessParams& p) {
    check_elongation(s.e);
    LagrangianState2D::Row f{};
    f[0] = s.v[0];
    f[1] = s.v[1];
    f[5] = s.e * s.varpi;
    f[7] = 3.0 / (p.Re * s.e * s.e) * s.kappa * s.v[0];
    return f;
}

inline LagrangianState2D::Row lag_flux_down(const LagrangianState2D& s,
                                            const DimensionlessParams& p) {
    LagrangianState2D::Row f{};
    f[6] = s.n1 / p.Re;
    return f;
}

inline LagrangianState2D::Row lag_flux_central_at(const LagrangianState2D& at,
                                                  const LagrangianState2D& left,
                                                  const LagrangianState2D& right,
                                                  double d,
                                                  const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("lag_flux_central: cell size must be positive");
    check_elongation(at.e);
    LagrangianState2D::Row f{};
    f[7] = 3.0 / (p.Re * at.e * at.e) * (right.v[1] - left.v[1]) / d;
    f[8] = 3.0 / (p.Re * at.e * at.e * at.e) *
           (right.e * right.varpi - left.e * left.varpi) / d;
    return f;
}

inline LagrangianState2D mean_state(const LagrangianState2D& a, const LagrangianState2D& b) {
    auto pa = a.pack(), pb = b.pack();
    LagrangianState2D::Row m{};
    for (int i = 0; i < LagrangianState2D::kComp; ++i) m[i] = 0.5 * (pa[i] + pb[i]);
    return LagrangianState2D::unpack(m);
}

inline LagrangianState2D::Row lag_flux_central(const LagrangianState2D& left,
                                               const LagrangianState2D& right,
                                               double d,
                                               const DimensionlessParams& p) {
    return lag_flux_central_at(mean_state(left, right), left, right, d, p);
}

/// The planar system has a scalar couple, so the p source is empty; the
/// kappa-coupled viscous term sits in the q source with the same backward
/// difference.
inline LagrangianState2D::Row lag_source_p(const LagrangianState2D&,
                                           const LagrangianState2D&, double,
                                           const DimensionlessParams&) {
    return {};
}

inline LagrangianState2D::Row lag_source_q(const LagrangianState2D& prev,
                                           const LagrangianState2D& cur,
                                           double d,
                                           const DimensionlessParams& p) {
    if (!(d > 0)) throw std::domain_error("lag_source_q: cell size must be positive");
    check_elongation(cur.e);
    LagrangianState2D::Row out{};
    const double omega = cur.e * cur.varpi;
    const Mat2 R = rot2d(cur.alpha);
    const double e2 = cur.e * cur.e;
    const double dv2 = (cur.v[1] - prev.v[1]) / d;

    out[0] = -cur.kappa * cur.v[1] + cur.e * omega;
    out[1] = cur.kappa * cur.v[0];

    const Vec2 rr = R.tmul(cur.v);
    out[2] = rr[0];
    out[3] = rr[1];

    out[4] = omega;
    out[5] = 0;

    // momentum: kappa n^perp with the derivative part of n2 backward-differenced
    const double n2a = 3.0 / e2 * cur.kappa * cur.v[0];
    const double n2d = 3.0 / e2 * dv2;
    Vec2 mom = {1.0 / p.Re * cur.kappa * -(n2a + n2d), 1.0 / p.Re * cur.kappa * cur.n1};
    const Vec2 vperp = perp(cur.v);
    mom += -omega * vperp;
    mom += -2.0 * p.Rb_inv * vperp;
    mom += (p.Rb_inv * p.Rb_inv) * (R * cur.r);
    out[6] = mom[0];
    out[7] = mom[1];

    const double dte = dv2 + cur.kappa * cur.v[0];
    out[8] = -16.0 / (p.eps * p.eps * p.Re) * cur.e * cur.n1 + p.Rb_inv * dte / e2;
    return out;
}

inline LagrangianState2D lag_nozzle_state2d() {
    LagrangianState2D s;
    s.e = 1;
    s.r = {1, 0};
    s.alpha = 0;
    s.kappa = 0;
    s.v = {0, 1};
    s.varpi = 0;
    return s;
}

}  // namespace spinrod
