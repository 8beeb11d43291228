#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "meridian/axial.hpp"
#include "meridian/errors.hpp"

namespace meridian {

using Vec3 = std::array<double, 3>;

// x = x0 + i x1 + j x2, identified with a point of R^3. Off the axis
// (rho > 0) it splits as x = x0 + I rho with I = i cos(theta) + j sin(theta).
struct ReducedQuaternion {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr ReducedQuaternion() = default;
    constexpr ReducedQuaternion(double a, double b, double c) : x0(a), x1(b), x2(c) {}

    double rho() const { return std::hypot(x1, x2); }
    double r() const { return std::hypot(x0, std::hypot(x1, x2)); }

    // Azimuth of the meridian half-plane; needs rho > 0.
    double theta() const {
        if (rho() == 0.0) throw DegenerateAxis("theta undefined on the x0-axis");
        return std::atan2(x2, x1);
    }

    // Polar angle in (0, pi); needs rho > 0 (so r > 0 as well).
    double phi() const {
        if (rho() == 0.0) throw DegenerateAxis("phi in (0, pi) requires rho > 0");
        return std::acos(x0 / r());
    }

    constexpr ReducedQuaternion conj() const { return {x0, -x1, -x2}; }

    constexpr ReducedQuaternion operator+(const ReducedQuaternion& o) const {
        return {x0 + o.x0, x1 + o.x1, x2 + o.x2};
    }
    constexpr ReducedQuaternion operator-(const ReducedQuaternion& o) const {
        return {x0 - o.x0, x1 - o.x1, x2 - o.x2};
    }
    constexpr ReducedQuaternion operator*(double s) const { return {x0 * s, x1 * s, x2 * s}; }

    // Meridian-chart coordinates (x0, rho) of this point.
    AxialPair chart() const { return {x0, rho()}; }

    // Lift a chart value back to R^3 along this point's meridian.
    ReducedQuaternion lift(const AxialPair& v) const {
        const double t = theta();
        return {v.u0, v.urho * std::cos(t), v.urho * std::sin(t)};
    }
};

struct Decomposition {
    double rho;
    double r;
    double theta;  // in (-pi, pi]
    double phi;    // in (0, pi)
};

// Splits x into (rho, r, theta, phi). The angular parts require rho > 0;
// on the axis theta is undefined (DegenerateAxis), at the origin so is phi
// (ZeroPoint is reserved for r = 0 with rho > 0, which cannot occur).
inline Decomposition decompose(const ReducedQuaternion& x) {
    const double rho = x.rho();
    const double r = x.r();
    if (r == 0.0) throw ZeroPoint("decompose at the origin: phi undefined");
    if (rho == 0.0) throw DegenerateAxis("decompose on the x0-axis: theta undefined");
    return {rho, r, std::atan2(x.x2, x.x1), std::acos(x.x0 / r)};
}

// Point of the meridian half-plane rho > 0, optionally tagged with its azimuth.
struct MeridianPoint {
    double x0 = 0.0;
    double rho = 1.0;
    double theta = 0.0;

    constexpr MeridianPoint() = default;
    constexpr MeridianPoint(double a, double b, double t = 0.0) : x0(a), rho(b), theta(t) {}

    ReducedQuaternion embed() const {
        return {x0, rho * std::cos(theta), rho * std::sin(theta)};
    }
};

// Piecewise-linear path inside one meridian half-plane. Vertices are
// (x0, rho) pairs with rho > 0; consecutive vertices must differ.
class PolylinePath {
public:
    explicit PolylinePath(std::vector<AxialPair> vertices) : v_(std::move(vertices)) {
        if (v_.size() < 2) throw EmptyPath("polyline needs at least 2 vertices");
        for (const auto& p : v_) {
            if (!(p.urho > 0.0)) throw DomainError("polyline vertex with rho <= 0");
            if (!std::isfinite(p.u0) || !std::isfinite(p.urho))
                throw NonFiniteSample("non-finite polyline vertex");
        }
        for (std::size_t i = 1; i < v_.size(); ++i)
            if (v_[i].u0 == v_[i - 1].u0 && v_[i].urho == v_[i - 1].urho)
                throw DomainError("repeated consecutive polyline vertex");
    }

    const std::vector<AxialPair>& vertices() const { return v_; }
    std::size_t segments() const { return v_.size() - 1; }

private:
    std::vector<AxialPair> v_;
};

}  // namespace meridian
