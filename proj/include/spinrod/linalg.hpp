#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace spinrod {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;

template <std::size_t N>
inline std::array<double, N> operator+(const std::array<double, N>& a,
                                       const std::array<double, N>& b) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <std::size_t N>
inline std::array<double, N> operator-(const std::array<double, N>& a,
                                       const std::array<double, N>& b) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <std::size_t N>
inline std::array<double, N> operator*(double s, const std::array<double, N>& a) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
    return r;
}

template <std::size_t N>
inline std::array<double, N>& operator+=(std::array<double, N>& a,
                                         const std::array<double, N>& b) {
    for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
    return a;
}

template <std::size_t N>
inline double dot(const std::array<double, N>& a, const std::array<double, N>& b) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t N>
inline double norm(const std::array<double, N>& a) {
    return std::sqrt(dot(a, a));
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

/// 2d perpendicular, (-v2, v1).
inline Vec2 perp(const Vec2& v) { return {-v[1], v[0]}; }

/// Diagonal scaling P_k = diag(1, 1, k).
struct DiagScale {
    double k = 1.0;
    Vec3 operator*(const Vec3& v) const { return {v[0], v[1], k * v[2]}; }
};

inline constexpr DiagScale kP2{2.0};
inline constexpr DiagScale kPHalf{0.5};
inline constexpr DiagScale kP23{2.0 / 3.0};
inline constexpr DiagScale kP13{1.0 / 3.0};

struct Mat2 {
    std::array<std::array<double, 2>, 2> m{};
    Vec2 operator*(const Vec2& v) const {
        return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
    }
    Vec2 tmul(const Vec2& v) const {
        return {m[0][0] * v[0] + m[1][0] * v[1], m[0][1] * v[0] + m[1][1] * v[1]};
    }
};

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};
    Vec3 operator*(const Vec3& v) const {
        Vec3 r{};
        for (int i = 0; i < 3; ++i)
            r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
        return r;
    }
    Vec3 tmul(const Vec3& v) const {
        Vec3 r{};
        for (int i = 0; i < 3; ++i)
            r[i] = m[0][i] * v[0] + m[1][i] * v[1] + m[2][i] * v[2];
        return r;
    }
    Vec3 col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
    static Mat3 identity() {
        Mat3 r;
        r.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        return r;
    }
};

}  // namespace spinrod
