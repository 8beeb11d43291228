#pragma once

#include <cmath>

namespace meridian {

// Value (u0, u_rho) in the plane spanned by {1, I} at a fixed meridian.
// The pair multiplies like a complex number because I^2 = -1; all holomorphic
// calculus in the meridian chart reduces to this arithmetic.
struct AxialPair {
    double u0 = 0.0;
    double urho = 0.0;

    constexpr AxialPair() = default;
    constexpr AxialPair(double a, double b) : u0(a), urho(b) {}

    constexpr AxialPair operator+(const AxialPair& o) const { return {u0 + o.u0, urho + o.urho}; }
    constexpr AxialPair operator-(const AxialPair& o) const { return {u0 - o.u0, urho - o.urho}; }
    constexpr AxialPair operator-() const { return {-u0, -urho}; }
    constexpr AxialPair operator*(double s) const { return {u0 * s, urho * s}; }
    constexpr AxialPair operator/(double s) const { return {u0 / s, urho / s}; }
    constexpr AxialPair operator*(const AxialPair& o) const {
        return {u0 * o.u0 - urho * o.urho, u0 * o.urho + urho * o.u0};
    }

    constexpr AxialPair conj() const { return {u0, -urho}; }
    constexpr double norm_sq() const { return u0 * u0 + urho * urho; }
    double norm() const { return std::hypot(u0, urho); }

    // Left multiplication by I: I*(a + I b) = -b + I a.
    constexpr AxialPair rotate_i() const { return {-urho, u0}; }

    constexpr AxialPair inverse() const {
        const double n = norm_sq();
        return {u0 / n, -urho / n};
    }
    constexpr AxialPair operator/(const AxialPair& o) const { return *this * o.inverse(); }

    constexpr AxialPair& operator+=(const AxialPair& o) {
        u0 += o.u0;
        urho += o.urho;
        return *this;
    }
};

constexpr AxialPair operator*(double s, const AxialPair& p) { return p * s; }

}  // namespace meridian
