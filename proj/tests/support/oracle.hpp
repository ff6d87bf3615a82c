#pragma once

// Test-only oracle: manufactured smooth fields plus direct transcriptions of
// the analytic right-hand sides of the four governing systems, evaluated with
// exact derivatives. Independent of the flux/source decomposition in the
// library; used to pin every sign, exponent and coupling of the assembled
// semi-discrete right-hand side.

#include <array>
#include <cmath>
#include <vector>

#include "spinrod/assembly.hpp"
#include "spinrod/linalg.hpp"
#include "spinrod/rotation.hpp"

namespace oracle {

using namespace spinrod;

/// Smooth scalar a + b sin(c x + d) with exact derivatives.
struct Wave {
    double a = 0, b = 0, c = 1, d = 0;
    double val(double x) const { return a + b * std::sin(c * x + d); }
    double d1(double x) const { return b * c * std::cos(c * x + d); }
    double d2(double x) const { return -b * c * c * std::sin(c * x + d); }
};

struct Wave3 {
    Wave x, y, z;
    Vec3 val(double s) const { return {x.val(s), y.val(s), z.val(s)}; }
    Vec3 d1(double s) const { return {x.d1(s), y.d1(s), z.d1(s)}; }
    Vec3 d2(double s) const { return {x.d2(s), y.d2(s), z.d2(s)}; }
};

inline Vec4 quat_mul(const Vec4& p, const Vec4& r) {
    return {p[0] * r[0] - p[1] * r[1] - p[2] * r[2] - p[3] * r[3],
            p[0] * r[1] + p[1] * r[0] + p[2] * r[3] - p[3] * r[2],
            p[0] * r[2] - p[1] * r[3] + p[2] * r[0] + p[3] * r[1],
            p[0] * r[3] + p[1] * r[2] - p[2] * r[1] + p[3] * r[0]};
}

/// Unit quaternion varying smoothly along the rod: a rotation about e1
/// composed with one about e3.
inline Vec4 manufactured_quat(double s) {
    const double a = 0.9 + 0.25 * std::sin(1.2 * s + 0.3);
    const double b = -0.4 + 0.3 * std::sin(0.7 * s + 1.1);
    const Vec4 qa{std::cos(a / 2), std::sin(a / 2), 0, 0};
    const Vec4 qb{std::cos(b / 2), 0, 0, std::sin(b / 2)};
    return quat_mul(qa, qb);
}

// ---------------------------------------------------------------------------
// Material set-up, 3d
// ---------------------------------------------------------------------------

struct ManufacturedLag3 {
    Wave n1{0.20, 0.30, 1.10, 0.50};
    Wave n2{-0.10, 0.25, 0.90, 1.30};
    Wave e{1.20, 0.40, 1.30, 0.40};
    Wave3 r{{0.10, 0.30, 0.80, 0.20}, {1.00, 0.20, 1.10, 0.90}, {0.30, 0.40, 0.70, 1.70}};
    Wave3 kappa{{0.20, 0.30, 1.00, 0.10}, {-0.15, 0.20, 0.80, 0.70}, {0.10, 0.25, 1.20, 1.90}};
    Wave3 v{{0.10, 0.20, 0.90, 0.80}, {-0.20, 0.30, 1.10, 0.20}, {1.00, 0.30, 0.60, 1.10}};
    Wave3 varpi{{0.15, 0.20, 1.00, 0.50}, {-0.10, 0.25, 0.70, 1.20}, {0.20, 0.20, 1.30, 0.90}};

    LagrangianState3D state(double s) const {
        LagrangianState3D st;
        st.n1 = n1.val(s);
        st.n2 = n2.val(s);
        st.e = e.val(s);
        st.r = r.val(s);
        st.q = manufactured_quat(s);
        st.kappa = kappa.val(s);
        st.v = v.val(s);
        st.varpi = varpi.val(s);
        return st;
    }

    LagrangianState3D::Row analytic_rhs(double s, const DimensionlessParams& p) const {
        const double ev = e.val(s), e1 = e.d1(s), e2v = e.d2(s);
        const Vec3 vv = v.val(s), v1 = v.d1(s), v2d = v.d2(s);
        const Vec3 kk = kappa.val(s), k1 = kappa.d1(s);
        const Vec3 pv = varpi.val(s), p1 = varpi.d1(s), p2d = varpi.d2(s);
        const Vec4 q = manufactured_quat(s);
        const Mat3 R = rot_from_quat(q);
        const Vec3 axis = R.col(0);
        const Vec3 rr = r.val(s);

        const Vec3 om = ev * pv;
        const Vec3 om1 = e1 * pv + ev * p1;
        const Vec3 om2 = e2v * pv + 2.0 * (e1 * p1) + ev * p2d;

        LagrangianState3D::Row out{};
        const Vec3 c0 = v1 + cross(kk, vv) + ev * Vec3{-om[1], om[0], 0.0};
        out[0] = c0[0]; out[1] = c0[1]; out[2] = c0[2];
        const Vec3 dr = R.tmul(vv);
        out[3] = dr[0]; out[4] = dr[1]; out[5] = dr[2];
        const Vec4 qr = quat_rate(om, q);
        out[6] = qr[0]; out[7] = qr[1]; out[8] = qr[2]; out[9] = qr[3];
        const Vec3 dk = om1 + cross(kk, om);
        out[10] = dk[0]; out[11] = dk[1]; out[12] = dk[2];

        const double strain = v1[2] + kk[0] * vv[1] - kk[1] * vv[0];
        const double n3 = 3.0 / (ev * ev) * strain;
        const double strain1 = v2d[2] + k1[0] * vv[1] + kk[0] * v1[1] -
                               k1[1] * vv[0] - kk[1] * v1[0];
        const double n3p = 3.0 * (-2.0 * e1 / (ev * ev * ev) * strain +
                                  strain1 / (ev * ev));
        const Vec3 nvec{n1.val(s), n2.val(s), n3};
        const Vec3 nprime{n1.d1(s), n2.d1(s), n3p};
        Vec3 mom = 1.0 / p.Re * (nprime + cross(kk, nvec));
        mom += cross(vv, om);
        mom += -(p.Fr_inv * p.Fr_inv) * axis;
        mom += -2.0 * p.Rb_inv * cross(axis, vv);
        mom += (p.Rb_inv * p.Rb_inv) * (R * Vec3{0.0, rr[1], rr[2]});
        out[13] = mom[0]; out[14] = mom[1]; out[15] = mom[2];

        const double e3v = ev * ev * ev;
        const Vec3 mlaw = 3.0 / 4.0 / e3v * (kP23 * (om1 + cross(kk, om)));
        const Vec3 mlaw1 =
            0.75 * (-3.0 * e1 / (e3v * ev) * (kP23 * (om1 + cross(kk, om))) +
                    1.0 / e3v * (kP23 * (om2 + cross(k1, om) + cross(kk, om1))));
        const Vec3 b = p.Rb_inv * axis;
        const Vec3 afull = om + b;
        const Vec3 l_om = 1.0 / ev * cross(kP2 * afull, afull) +
                          kP2 * (1.0 / ev * cross(om, b) + strain / (ev * ev) * b);
        Vec3 ang = 4.0 / p.Re * (mlaw1 + cross(kk, mlaw));
        ang += 16.0 / (p.eps * p.eps * p.Re) * ev * Vec3{-nvec[1], nvec[0], 0.0};
        ang += l_om;
        ang = kPHalf * ang;
        out[16] = ang[0]; out[17] = ang[1]; out[18] = ang[2];
        return out;
    }
};

// ---------------------------------------------------------------------------
// Material set-up, 2d (planar reduction of the 3d system)
// ---------------------------------------------------------------------------

struct ManufacturedLag2 {
    Wave n1{0.15, 0.30, 1.05, 0.60};
    Wave e{1.25, 0.35, 1.20, 0.30};
    Wave3 r{{0.90, 0.25, 0.95, 0.40}, {0.20, 0.35, 0.75, 1.50}, {}};
    Wave alpha{-0.30, 0.35, 0.85, 0.70};
    Wave kappa{0.10, 0.40, 1.15, 0.20};
    Wave3 v{{0.15, 0.25, 1.05, 0.90}, {1.00, 0.30, 0.70, 0.40}, {}};
    Wave varpi{0.10, 0.30, 0.95, 1.40};

    LagrangianState2D state(double s) const {
        LagrangianState2D st;
        st.n1 = n1.val(s);
        st.e = e.val(s);
        st.r = {r.x.val(s), r.y.val(s)};
        st.alpha = alpha.val(s);
        st.kappa = kappa.val(s);
        st.v = {v.x.val(s), v.y.val(s)};
        st.varpi = varpi.val(s);
        return st;
    }

    LagrangianState2D::Row analytic_rhs(double s, const DimensionlessParams& p) const {
        const double ev = e.val(s), e1 = e.d1(s);
        const Vec2 vv{v.x.val(s), v.y.val(s)};
        const Vec2 v1{v.x.d1(s), v.y.d1(s)};
        const double v2dd = v.y.d2(s);
        const double kk = kappa.val(s), k1 = kappa.d1(s);
        const double pv = varpi.val(s), p1 = varpi.d1(s), p2d = varpi.d2(s);
        const double e2v = e.d2(s);
        const Mat2 R = rot2d(alpha.val(s));
        const Vec2 rr{r.x.val(s), r.y.val(s)};

        const double om = ev * pv;
        const double om1 = e1 * pv + ev * p1;
        const double om2 = e2v * pv + 2.0 * e1 * p1 + ev * p2d;

        LagrangianState2D::Row out{};
        out[0] = v1[0] - kk * vv[1] + ev * om;
        out[1] = v1[1] + kk * vv[0];
        const Vec2 dr = R.tmul(vv);
        out[2] = dr[0];
        out[3] = dr[1];
        out[4] = om;
        out[5] = om1;

        const double strain = v1[1] + kk * vv[0];
        const double strain1 = v2dd + k1 * vv[0] + kk * v1[0];
        const double n2 = 3.0 / (ev * ev) * strain;
        const double n2p = 3.0 * (-2.0 * e1 / (ev * ev * ev) * strain +
                                  strain1 / (ev * ev));
        const Vec2 nvec{n1.val(s), n2};
        const Vec2 nprime{n1.d1(s), n2p};
        Vec2 mom = 1.0 / p.Re * (nprime + kk * perp(nvec));
        mom += -om * perp(vv);
        mom += -2.0 * p.Rb_inv * perp(vv);
        mom += (p.Rb_inv * p.Rb_inv) * (R * rr);
        out[6] = mom[0];
        out[7] = mom[1];

        const double e3v = ev * ev * ev;
        const double mlaw1 = 0.75 * (-3.0 * e1 / (e3v * ev) * om1 + om2 / e3v);
        out[8] = 4.0 / p.Re * mlaw1 -
                 16.0 / (p.eps * p.eps * p.Re) * ev * nvec[0] +
                 p.Rb_inv * strain / (ev * ev);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Spatial set-up, 3d
// ---------------------------------------------------------------------------

struct ManufacturedEul3 {
    Wave n1{0.20, 0.30, 1.10, 0.50};
    Wave n2{-0.10, 0.25, 0.90, 1.30};
    Wave u{1.30, 0.35, 1.20, 0.60};
    Wave3 r{{0.10, 0.30, 0.80, 0.20}, {1.00, 0.20, 1.10, 0.90}, {0.30, 0.40, 0.70, 1.70}};
    Wave3 kappa{{0.20, 0.30, 1.00, 0.10}, {-0.15, 0.20, 0.80, 0.70}, {0.10, 0.25, 1.20, 1.90}};
    Wave A{1.10, 0.30, 0.90, 0.80};
    Wave3 v{{0.10, 0.20, 0.90, 0.80}, {-0.20, 0.30, 1.10, 0.20}, {1.00, 0.30, 0.60, 1.10}};
    Wave3 omega{{0.15, 0.20, 1.00, 0.50}, {-0.10, 0.25, 0.70, 1.20}, {0.20, 0.20, 1.30, 0.90}};

    EulerianState3D state(double s) const {
        EulerianState3D st;
        st.n1 = n1.val(s);
        st.n2 = n2.val(s);
        st.u = u.val(s);
        st.r = r.val(s);
        st.q = manufactured_quat(s);
        st.kappa = kappa.val(s);
        st.A = A.val(s);
        st.v = v.val(s);
        st.omega = omega.val(s);
        return st;
    }

    EulerianState3D::Row analytic_rhs(double s, const DimensionlessParams& p) const {
        const double uu = u.val(s), u1 = u.d1(s), u2 = u.d2(s);
        const double Av = A.val(s), A1 = A.d1(s);
        const Vec3 vv = v.val(s), v1 = v.d1(s);
        const Vec3 kk = kappa.val(s), k1 = kappa.d1(s);
        const Vec3 om = omega.val(s), om1 = omega.d1(s), om2 = omega.d2(s);
        const Vec4 q = manufactured_quat(s);
        const Mat3 R = rot_from_quat(q);
        const Vec3 axis = R.col(0);
        const Vec3 rr = r.val(s);

        EulerianState3D::Row out{};
        const Vec3 c0 = (v1 - Vec3{0, 0, u1}) + cross(kk, vv) + Vec3{-om[1], om[0], 0.0};
        out[0] = c0[0]; out[1] = c0[1]; out[2] = c0[2];
        const Vec3 dr = R.tmul(vv - uu * Vec3{0, 0, 1});
        out[3] = dr[0]; out[4] = dr[1]; out[5] = dr[2];
        const Vec4 qr = quat_rate(om - uu * kk, q);
        out[6] = qr[0]; out[7] = qr[1]; out[8] = qr[2]; out[9] = qr[3];
        const Vec3 dk = -1.0 * (u1 * kk + uu * k1) + om1 + cross(kk, om);
        out[10] = dk[0]; out[11] = dk[1]; out[12] = dk[2];
        out[13] = -(u1 * Av + uu * A1);

        const double n3 = 3.0 * Av * u1;
        const double n3p = 3.0 * (A1 * u1 + Av * u2);
        const Vec3 nvec{n1.val(s), n2.val(s), n3};
        const Vec3 nprime{n1.d1(s), n2.d1(s), n3p};
        Vec3 mom = -1.0 * (u1 * Av * vv + uu * A1 * vv + uu * Av * v1);
        mom += 1.0 / p.Re * (nprime + cross(kk, nvec));
        mom += Av * cross(vv, om);
        mom += -(p.Fr_inv * p.Fr_inv) * Av * axis;
        mom += -2.0 * p.Rb_inv * cross(axis, Av * vv);
        mom += (p.Rb_inv * p.Rb_inv) * Av * (R * Vec3{0.0, rr[1], rr[2]});
        out[14] = mom[0]; out[15] = mom[1]; out[16] = mom[2];

        const double A2 = Av * Av;
        const Vec3 mlaw = 0.75 * A2 * (kP23 * (om1 + cross(kk, om)));
        const Vec3 mlaw1 = 0.75 * (2.0 * Av * A1 * (kP23 * (om1 + cross(kk, om))) +
                                   A2 * (kP23 * (om2 + cross(k1, om) + cross(kk, om1))));
        const Vec3 b = p.Rb_inv * axis;
        const Vec3 afull = om + b;
        const Vec3 l_om = A2 * cross(kP2 * afull, afull) +
                          kP2 * (A2 * cross(om, b) + p.Rb_inv * A2 * u1 * axis);
        Vec3 ang = -1.0 * (kP2 * (u1 * A2 * om + 2.0 * uu * Av * A1 * om + uu * A2 * om1));
        ang += 4.0 / p.Re * (mlaw1 + cross(kk, mlaw));
        ang += 16.0 / (p.eps * p.eps * p.Re) * Vec3{-nvec[1], nvec[0], 0.0};
        ang += l_om;
        out[17] = ang[0]; out[18] = ang[1]; out[19] = ang[2];
        return out;
    }
};

// ---------------------------------------------------------------------------
// Spatial set-up, 2d
// ---------------------------------------------------------------------------

struct ManufacturedEul2 {
    Wave n1{0.15, 0.30, 1.05, 0.60};
    Wave u{1.30, 0.30, 1.10, 0.70};
    Wave3 r{{0.90, 0.25, 0.95, 0.40}, {0.20, 0.35, 0.75, 1.50}, {}};
    Wave alpha{-0.30, 0.35, 0.85, 0.70};
    Wave kappa{0.10, 0.40, 1.15, 0.20};
    Wave A{1.15, 0.30, 0.95, 1.00};
    Wave3 v{{0.15, 0.25, 1.05, 0.90}, {1.00, 0.30, 0.70, 0.40}, {}};
    Wave omega{0.10, 0.30, 0.95, 1.40};

    EulerianState2D state(double s) const {
        EulerianState2D st;
        st.n1 = n1.val(s);
        st.u = u.val(s);
        st.r = {r.x.val(s), r.y.val(s)};
        st.alpha = alpha.val(s);
        st.kappa = kappa.val(s);
        st.A = A.val(s);
        st.v = {v.x.val(s), v.y.val(s)};
        st.omega = omega.val(s);
        return st;
    }

    EulerianState2D::Row analytic_rhs(double s, const DimensionlessParams& p) const {
        const double uu = u.val(s), u1 = u.d1(s), u2 = u.d2(s);
        const double Av = A.val(s), A1 = A.d1(s);
        const Vec2 vv{v.x.val(s), v.y.val(s)};
        const Vec2 v1{v.x.d1(s), v.y.d1(s)};
        const double kk = kappa.val(s), k1 = kappa.d1(s);
        const double om = omega.val(s), om1 = omega.d1(s), om2 = omega.d2(s);
        const Mat2 R = rot2d(alpha.val(s));
        const Vec2 rr{r.x.val(s), r.y.val(s)};

        EulerianState2D::Row out{};
        out[0] = v1[0] - kk * vv[1] + om;
        out[1] = v1[1] - u1 + kk * vv[0];
        const Vec2 dr = R.tmul(Vec2{vv[0], vv[1] - uu});
        out[2] = dr[0];
        out[3] = dr[1];
        out[4] = om - uu * kk;
        out[5] = -(u1 * kk + uu * k1) + om1;
        out[6] = -(u1 * Av + uu * A1);

        const double n2 = 3.0 * Av * u1;
        const double n2p = 3.0 * (A1 * u1 + Av * u2);
        const Vec2 nvec{n1.val(s), n2};
        const Vec2 nprime{n1.d1(s), n2p};
        Vec2 mom = -1.0 * (u1 * Av * vv + uu * A1 * vv + uu * Av * v1);
        mom += 1.0 / p.Re * (nprime + kk * perp(nvec));
        mom += -Av * om * perp(vv);
        mom += -2.0 * p.Rb_inv * Av * perp(vv);
        mom += (p.Rb_inv * p.Rb_inv) * Av * (R * rr);
        out[7] = mom[0];
        out[8] = mom[1];

        const double A2 = Av * Av;
        const double mlaw1 = 0.75 * (2.0 * Av * A1 * om1 + A2 * om2);
        out[9] = -(u1 * A2 * om + 2.0 * uu * Av * A1 * om + uu * A2 * om1) +
                 4.0 / p.Re * mlaw1 -
                 16.0 / (p.eps * p.eps * p.Re) * nvec[0] +
                 p.Rb_inv * A2 * u1;
        return out;
    }
};

// ---------------------------------------------------------------------------
// Convergence measurement
// ---------------------------------------------------------------------------

struct RowConvergence {
    std::vector<double> coarse, mid, fine;  ///< per-row max errors at n, 2n, 4n
    int n_rows = 0;

    /// Least-squares log-log slope per row; rows converged to roundoff pass
    /// unconditionally.
    bool all_rows_at_least(double min_order, double floor_tol = 1e-9) const {
        for (int r = 0; r < n_rows; ++r) {
            if (coarse[r] < floor_tol && mid[r] < floor_tol && fine[r] < floor_tol)
                continue;
            const double s1 = std::log2(coarse[r] / mid[r]);
            const double s2 = std::log2(mid[r] / fine[r]);
            if (0.5 * (s1 + s2) < min_order) return false;
        }
        return true;
    }
    double worst_order(double floor_tol = 1e-9) const {
        double worst = 1e9;
        for (int r = 0; r < n_rows; ++r) {
            if (coarse[r] < floor_tol && mid[r] < floor_tol && fine[r] < floor_tol)
                continue;
            worst = std::min(worst, 0.5 * (std::log2(coarse[r] / mid[r]) +
                                           std::log2(mid[r] / fine[r])));
        }
        return worst;
    }
};

template <class Model, class Manufactured>
std::vector<double> rhs_errors(const Manufactured& mf, int n,
                               const DimensionlessParams& p) {
    const double d = 1.0 / n;
    std::vector<typename Model::State> cells(n);
    for (int i = 0; i < n; ++i) cells[i] = mf.state((i + 0.5) * d);
    const auto rhs = semidiscrete_rhs<Model>(cells, d, p);
    std::vector<double> err(Model::kComp, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        const auto exact = mf.analytic_rhs((i + 0.5) * d, p);
        for (int c = 0; c < Model::kComp; ++c)
            err[c] = std::max(err[c], std::abs(rhs[i][c] - exact[c]));
    }
    return err;
}

template <class Model, class Manufactured>
RowConvergence measure(const Manufactured& mf, const DimensionlessParams& p,
                       int n0 = 40) {
    RowConvergence rc;
    rc.n_rows = Model::kComp;
    rc.coarse = rhs_errors<Model>(mf, n0, p);
    rc.mid = rhs_errors<Model>(mf, 2 * n0, p);
    rc.fine = rhs_errors<Model>(mf, 4 * n0, p);
    return rc;
}

}  // namespace oracle
