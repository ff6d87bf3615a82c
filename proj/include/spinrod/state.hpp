#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spinrod/linalg.hpp"
#include "spinrod/params.hpp"

namespace spinrod {

enum class VarClass { Differential, Algebraic };

/// Per-cell unknowns of the material (inflow) set-up in 3d.
///
/// Component order is fixed; all flat-vector interfaces (packing, residual
/// rows, CSV columns) follow it:
///   n1 n2 e r1 r2 r3 q0 q1 q2 q3 k1 k2 k3 v1 v2 v3 varpi1 varpi2 varpi3
struct LagrangianState3D {
    double n1 = 0;             ///< normal contact-force multiplier, director 1
    double n2 = 0;             ///< normal contact-force multiplier, director 2
    double e = 1;              ///< elongation, > 0
    Vec3 r{};                  ///< center-line, rotating outer basis
    Vec4 q{1, 0, 0, 0};        ///< unit rotation quaternion
    Vec3 kappa{};              ///< generalized curvature, director basis
    Vec3 v{};                  ///< adapted velocity, director basis
    Vec3 varpi{};              ///< omega / e, director basis

    static constexpr int kComp = 19;
    using Row = std::array<double, kComp>;

    Row pack() const {
        return {n1, n2, e, r[0], r[1], r[2], q[0], q[1], q[2], q[3],
                kappa[0], kappa[1], kappa[2], v[0], v[1], v[2],
                varpi[0], varpi[1], varpi[2]};
    }
    static LagrangianState3D unpack(const Row& a) {
        LagrangianState3D s;
        s.n1 = a[0]; s.n2 = a[1]; s.e = a[2];
        s.r = {a[3], a[4], a[5]};
        s.q = {a[6], a[7], a[8], a[9]};
        s.kappa = {a[10], a[11], a[12]};
        s.v = {a[13], a[14], a[15]};
        s.varpi = {a[16], a[17], a[18]};
        return s;
    }

    /// Evolution-carrying image z(phi) = (0, 0, e, r, q, kappa, v, varpi).
    Row z() const {
        Row a = pack();
        a[0] = 0;
        a[1] = 0;
        return a;
    }

    static std::array<VarClass, kComp> var_classes() {
        std::array<VarClass, kComp> c;
        c.fill(VarClass::Differential);
        c[0] = c[1] = VarClass::Algebraic;
        return c;
    }
};

/// Planar reduction of LagrangianState3D (rotation as a single angle):
///   n1 e r1 r2 alpha kappa v1 v2 varpi
struct LagrangianState2D {
    double n1 = 0;
    double e = 1;
    Vec2 r{};
    double alpha = 0;  ///< rotation angle, nominally in [-pi/2, 0]
    double kappa = 0;
    Vec2 v{};
    double varpi = 0;

    static constexpr int kComp = 9;
    using Row = std::array<double, kComp>;

    Row pack() const { return {n1, e, r[0], r[1], alpha, kappa, v[0], v[1], varpi}; }
    static LagrangianState2D unpack(const Row& a) {
        LagrangianState2D s;
        s.n1 = a[0]; s.e = a[1];
        s.r = {a[2], a[3]};
        s.alpha = a[4]; s.kappa = a[5];
        s.v = {a[6], a[7]};
        s.varpi = a[8];
        return s;
    }

    Row z() const {
        Row a = pack();
        a[0] = 0;
        return a;
    }

    static std::array<VarClass, kComp> var_classes() {
        std::array<VarClass, kComp> c;
        c.fill(VarClass::Differential);
        c[0] = VarClass::Algebraic;
        return c;
    }
};

/// Per-cell unknowns of the spatial (inflow-outflow) set-up in 3d:
///   n1 n2 u r1 r2 r3 q0 q1 q2 q3 k1 k2 k3 A v1 v2 v3 w1 w2 w3
struct EulerianState3D {
    double n1 = 0;
    double n2 = 0;
    double u = 1;              ///< intrinsic (convective) velocity, algebraic
    Vec3 r{};
    Vec4 q{1, 0, 0, 0};
    Vec3 kappa{};
    double A = 1;              ///< cross-sectional area, > 0
    Vec3 v{};
    Vec3 omega{};

    static constexpr int kComp = 20;
    using Row = std::array<double, kComp>;

    Row pack() const {
        return {n1, n2, u, r[0], r[1], r[2], q[0], q[1], q[2], q[3],
                kappa[0], kappa[1], kappa[2], A, v[0], v[1], v[2],
                omega[0], omega[1], omega[2]};
    }
    static EulerianState3D unpack(const Row& a) {
        EulerianState3D s;
        s.n1 = a[0]; s.n2 = a[1]; s.u = a[2];
        s.r = {a[3], a[4], a[5]};
        s.q = {a[6], a[7], a[8], a[9]};
        s.kappa = {a[10], a[11], a[12]};
        s.A = a[13];
        s.v = {a[14], a[15], a[16]};
        s.omega = {a[17], a[18], a[19]};
        return s;
    }

    /// z(phi) = (0, 0, 0, r, q, kappa, A, A v, P2 A^2 omega). The conserved
    /// products, not the primitives, carry the time derivatives.
    Row z() const {
        Row a = pack();
        a[0] = a[1] = a[2] = 0;
        a[14] = A * v[0];
        a[15] = A * v[1];
        a[16] = A * v[2];
        const double A2 = A * A;
        a[17] = A2 * omega[0];
        a[18] = A2 * omega[1];
        a[19] = 2.0 * A2 * omega[2];
        return a;
    }

    static std::array<VarClass, kComp> var_classes() {
        std::array<VarClass, kComp> c;
        c.fill(VarClass::Differential);
        c[0] = c[1] = c[2] = VarClass::Algebraic;
        return c;
    }
};

/// Planar reduction of EulerianState3D:
///   n1 u r1 r2 alpha kappa A v1 v2 omega
struct EulerianState2D {
    double n1 = 0;
    double u = 1;
    Vec2 r{};
    double alpha = 0;
    double kappa = 0;
    double A = 1;
    Vec2 v{};
    double omega = 0;

    static constexpr int kComp = 10;
    using Row = std::array<double, kComp>;

    Row pack() const {
        return {n1, u, r[0], r[1], alpha, kappa, A, v[0], v[1], omega};
    }
    static EulerianState2D unpack(const Row& a) {
        EulerianState2D s;
        s.n1 = a[0]; s.u = a[1];
        s.r = {a[2], a[3]};
        s.alpha = a[4]; s.kappa = a[5]; s.A = a[6];
        s.v = {a[7], a[8]};
        s.omega = a[9];
        return s;
    }

    Row z() const {
        Row a = pack();
        a[0] = a[1] = 0;
        a[7] = A * v[0];
        a[8] = A * v[1];
        a[9] = A * A * omega;
        return a;
    }

    static std::array<VarClass, kComp> var_classes() {
        std::array<VarClass, kComp> c;
        c.fill(VarClass::Differential);
        c[0] = c[1] = VarClass::Algebraic;
        return c;
    }
};

/// Runtime component classification for the set-up/dimension selected by the
/// parameters. Constraint rows of the residual coincide with the algebraic
/// entries (the leading zero block of z).
inline std::vector<VarClass> classify_variables(const DimensionlessParams& p) {
    auto to_vector = [](auto arr) { return std::vector<VarClass>(arr.begin(), arr.end()); };
    if (p.setup == Setup::LagrangianInflow)
        return p.dim == 3 ? to_vector(LagrangianState3D::var_classes())
                          : to_vector(LagrangianState2D::var_classes());
    return p.dim == 3 ? to_vector(EulerianState3D::var_classes())
                      : to_vector(EulerianState2D::var_classes());
}

/// z(phi) on a packed state, dispatched on the parameter switches.
inline std::vector<double> z_of_state(const std::vector<double>& phi,
                                      const DimensionlessParams& p) {
    auto apply = [&phi](auto tag) {
        using State = decltype(tag);
        if (phi.size() != State::kComp)
            throw std::invalid_argument("z_of_state: wrong component count");
        typename State::Row in;
        for (int i = 0; i < State::kComp; ++i) in[i] = phi[i];
        auto out = State::unpack(in).z();
        return std::vector<double>(out.begin(), out.end());
    };
    if (p.setup == Setup::LagrangianInflow)
        return p.dim == 3 ? apply(LagrangianState3D{}) : apply(LagrangianState2D{});
    return p.dim == 3 ? apply(EulerianState3D{}) : apply(EulerianState2D{});
}

}  // namespace spinrod
