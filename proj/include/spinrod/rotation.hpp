#pragma once

#include <cmath>
#include <stdexcept>

#include "spinrod/linalg.hpp"

namespace spinrod {

/// Rotation matrix R(q) mapping rotating-outer coordinate tuples to director
/// coordinate tuples. Quadratic in q, so R(c q) = c^2 R(q); no unit check.
inline Mat3 rot_from_quat_unchecked(const Vec4& q) {
    const double q0 = q[0], q1 = q[1], q2 = q[2], q3 = q[3];
    Mat3 r;
    r.m = {{{q1 * q1 - q2 * q2 - q3 * q3 + q0 * q0, 2 * (q1 * q2 - q0 * q3),
             2 * (q1 * q3 + q0 * q2)},
            {2 * (q1 * q2 + q0 * q3), -q1 * q1 + q2 * q2 - q3 * q3 + q0 * q0,
             2 * (q2 * q3 - q0 * q1)},
            {2 * (q1 * q3 - q0 * q2), 2 * (q2 * q3 + q0 * q1),
             -q1 * q1 - q2 * q2 + q3 * q3 + q0 * q0}}};
    return r;
}

/// Rotation matrix of a unit quaternion. The caller must normalize first;
/// a norm defect beyond tolerance is a contract violation.
inline Mat3 rot_from_quat(const Vec4& q, double tol = 1e-6) {
    if (std::abs(norm(q) - 1.0) > tol)
        throw std::domain_error("rot_from_quat: quaternion is not unit length");
    return rot_from_quat_unchecked(q);
}

/// Kinematic quaternion rate A(w) q with the skew-symmetric generator A.
/// Pass w = omega for the material description and w = omega - u kappa for
/// the spatial one.
inline Vec4 quat_rate(const Vec3& w, const Vec4& q) {
    const double q0 = q[0], q1 = q[1], q2 = q[2], q3 = q[3];
    return {0.5 * (w[0] * q1 + w[1] * q2 + w[2] * q3),
            0.5 * (-w[0] * q0 + w[2] * q2 - w[1] * q3),
            0.5 * (-w[1] * q0 - w[2] * q1 + w[0] * q3),
            0.5 * (-w[2] * q0 + w[1] * q1 - w[0] * q2)};
}

/// q / |q|. Does not touch the sign, so it is safe to apply during time
/// integration without introducing jumps.
inline Vec4 quat_normalize(const Vec4& q) {
    const double n = norm(q);
    if (!(n > 0)) throw std::domain_error("quat_normalize: zero quaternion");
    return {q[0] / n, q[1] / n, q[2] / n, q[3] / n};
}

/// Unit quaternion with the test-canonical sign q0 >= 0.
inline Vec4 quat_canonical(const Vec4& q) {
    Vec4 u = quat_normalize(q);
    if (u[0] < 0) u = {-u[0], -u[1], -u[2], -u[3]};
    return u;
}

/// Planar rotation R(alpha) = [[sin a, -cos a], [cos a, sin a]] mapping outer
/// tuples to director tuples in the 2d scenario.
inline Mat2 rot2d(double alpha) {
    const double s = std::sin(alpha), c = std::cos(alpha);
    Mat2 r;
    r.m = {{{s, -c}, {c, s}}};
    return r;
}

/// The unit quaternion (q0 > 0) whose rotation matrix equals the nozzle
/// boundary matrix e1 (x) e1 - e2 (x) e3 + e3 (x) e2.
inline Vec4 nozzle_quaternion() {
    const double h = std::sqrt(0.5);
    return {h, h, 0.0, 0.0};
}

}  // namespace spinrod
