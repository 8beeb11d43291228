#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "meridian/core.hpp"
#include "meridian/errors.hpp"
#include "meridian/fd.hpp"
#include "meridian/pde.hpp"
#include "meridian/quadrature.hpp"
#include "meridian/special.hpp"

namespace meridian::sov {

// Separated solution families. Azimuthal-style factors carry integer mode
// numbers; radial factors are Bessel or power profiles selected by the sign
// of (frequency^2 - mode^2). All evaluators are exact up to the special
// function layer; gradients are analytic, never finite differences.

struct CartesianMode {
    int lambda = 0;
    double C1 = 0.0, C2 = 0.0;  // cos/sin coefficients in x1
    double A1 = 0.0, A2 = 0.0;  // radial pair coefficients in x2
};

struct CartesianSoVParams {
    double alpha = 0.0;
    double beta = 0.0;          // axial frequency shared by all modes
    double B1 = 0.0, B2 = 0.0;  // cosh/sinh coefficients in x0
    std::vector<CartesianMode> modes;
};

enum class Branch { Hyperbolic, Trigonometric };

struct CylindricalMode {
    int lambda = 0;
    double C1 = 0.0, C2 = 0.0;  // cos/sin coefficients in theta
    double A1 = 0.0, A2 = 0.0;  // radial pair coefficients in rho
};

struct CylindricalSoVParams {
    double alpha = 0.0;
    Branch branch = Branch::Hyperbolic;
    double freq = 0.0;          // cosh/sinh rate, or trigonometric frequency
    double B1 = 0.0, B2 = 0.0;  // x0 pair coefficients
    std::vector<CylindricalMode> modes;
};

namespace detail {

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(what) + " must be finite");
}

inline bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// Radial profile x2^p [A1 Z1(k x2) + A2 Z2(k x2)] and its derivative, where
// (Z1, Z2) = (J, Y) on the oscillatory branch and (I, K) on the modified one.
// The modified pair is the real realization of the first/second kind pair at
// purely imaginary argument (same solution space, real coefficients).
struct RadialProfile {
    double p;     // power prefactor exponent
    double k;     // argument scale, k > 0
    bool modified;
    double A1, A2;

    double value(double s) const {
        using special::bessel;
        using special::BesselKind;
        const auto k1 = modified ? BesselKind::I : BesselKind::J;
        const auto k2 = modified ? BesselKind::K : BesselKind::Y;
        return std::pow(s, p) * (A1 * bessel(k1, p, k * s) + A2 * bessel(k2, p, k * s));
    }
    double derivative(double s) const {
        using special::bessel;
        using special::bessel_derivative;
        using special::BesselKind;
        const auto k1 = modified ? BesselKind::I : BesselKind::J;
        const auto k2 = modified ? BesselKind::K : BesselKind::Y;
        const double z = k * s;
        const double pair = A1 * bessel(k1, p, z) + A2 * bessel(k2, p, z);
        const double pair_d = A1 * bessel_derivative(k1, p, z) + A2 * bessel_derivative(k2, p, z);
        return p * std::pow(s, p - 1.0) * pair + std::pow(s, p) * k * pair_d;
    }
};

// Branch selection for the planar family: order (alpha+1)/2, argument scale
// sqrt(|beta^2 - lambda^2|).
inline RadialProfile planar_profile(double alpha, double beta, const CartesianMode& m) {
    const double d = beta * beta - static_cast<double>(m.lambda) * m.lambda;
    if (d == 0.0)
        throw DegenerateMode("mode lambda^2 equals beta^2; this mode is the power-law pair "
                             "handled by euler_planar");
    return {0.5 * (alpha + 1.0), std::sqrt(std::fabs(d)), d < 0.0, m.A1, m.A2};
}

}  // namespace detail

inline std::vector<std::string> validate(const CartesianSoVParams& p) {
    if (p.modes.empty()) throw InvalidParams("at least one mode is required");
    detail::require_finite(p.alpha, "alpha");
    detail::require_finite(p.beta, "beta");
    detail::require_finite(p.B1, "B1");
    detail::require_finite(p.B2, "B2");
    for (const auto& m : p.modes) {
        detail::require_finite(m.C1, "C1");
        detail::require_finite(m.C2, "C2");
        detail::require_finite(m.A1, "A1");
        detail::require_finite(m.A2, "A2");
    }
    std::vector<std::string> warnings;
    if (detail::is_integer(p.beta))
        warnings.push_back("beta is an integer; any mode with lambda^2 = beta^2 degenerates "
                           "to the power-law branch (euler_planar)");
    for (const auto& m : p.modes)
        if (static_cast<double>(m.lambda) * m.lambda == p.beta * p.beta)
            warnings.push_back("mode lambda = " + std::to_string(m.lambda) +
                               " hits lambda^2 = beta^2; evaluation throws DegenerateMode");
    return warnings;
}

inline std::vector<std::string> validate(const CylindricalSoVParams& p) {
    if (p.modes.empty()) throw InvalidParams("at least one mode is required");
    detail::require_finite(p.alpha, "alpha");
    detail::require_finite(p.freq, "freq");
    detail::require_finite(p.B1, "B1");
    detail::require_finite(p.B2, "B2");
    for (const auto& m : p.modes) {
        detail::require_finite(m.C1, "C1");
        detail::require_finite(m.C2, "C2");
        detail::require_finite(m.A1, "A1");
        detail::require_finite(m.A2, "A2");
    }
    std::vector<std::string> warnings;
    if (p.freq == 0.0)
        warnings.push_back("freq = 0: evaluation throws ZeroFrequency; the radial factor is "
                           "the power-law pair (euler_cylindrical)");
    if (p.branch == Branch::Trigonometric && !detail::is_integer(p.freq))
        warnings.push_back("trigonometric branch expects an integer frequency");
    return warnings;
}

// h(x) = (B1 cosh(beta x0) + B2 sinh(beta x0))
//        * sum over modes of (C1 cos(lambda x1) + C2 sin(lambda x1)) * radial(x2).
inline double theorem1_potential(const CartesianSoVParams& p, const Vec3& x) {
    if (!(x[2] > 0.0)) throw DomainError("theorem1_potential requires x2 > 0");
    const double xi = p.B1 * std::cosh(p.beta * x[0]) + p.B2 * std::sinh(p.beta * x[0]);
    double sum = 0.0;
    for (const auto& m : p.modes) {
        const double s =
            m.C1 * std::cos(m.lambda * x[1]) + m.C2 * std::sin(m.lambda * x[1]);
        sum += s * detail::planar_profile(p.alpha, p.beta, m).value(x[2]);
    }
    return xi * sum;
}

inline Vec3 theorem1_gradient(const CartesianSoVParams& p, const Vec3& x) {
    if (!(x[2] > 0.0)) throw DomainError("theorem1_gradient requires x2 > 0");
    const double xi = p.B1 * std::cosh(p.beta * x[0]) + p.B2 * std::sinh(p.beta * x[0]);
    const double xi_d =
        p.beta * (p.B1 * std::sinh(p.beta * x[0]) + p.B2 * std::cosh(p.beta * x[0]));
    double sum = 0.0, sum_d1 = 0.0, sum_d2 = 0.0;
    for (const auto& m : p.modes) {
        const auto prof = detail::planar_profile(p.alpha, p.beta, m);
        const double s = m.C1 * std::cos(m.lambda * x[1]) + m.C2 * std::sin(m.lambda * x[1]);
        const double s_d =
            m.lambda * (-m.C1 * std::sin(m.lambda * x[1]) + m.C2 * std::cos(m.lambda * x[1]));
        const double u = prof.value(x[2]);
        sum += s * u;
        sum_d1 += s_d * u;
        sum_d2 += s * prof.derivative(x[2]);
    }
    return {xi_d * sum, xi * sum_d1, xi * sum_d2};
}

inline ScalarField3 theorem1_field(const CartesianSoVParams& p) {
    return [p](const Vec3& x) { return theorem1_potential(p, x); };
}

// Power-law pair at the degenerate planar branch: A1 x2^(alpha+1) + A2.
inline double euler_planar(double alpha, double A1, double A2, double x2) {
    if (!(x2 > 0.0)) throw DomainError("euler_planar requires x2 > 0");
    return A1 * std::pow(x2, alpha + 1.0) + A2;
}

inline std::vector<std::string> euler_planar_warnings(double alpha) {
    std::vector<std::string> warnings;
    if (alpha == -1.0)
        warnings.push_back("alpha = -1: exponent alpha + 1 vanishes and the power pair "
                           "degenerates to constants (the missing solution is log x2)");
    return warnings;
}

namespace detail {

struct CylEval {
    double xi, xi_d;  // x0 factor and its derivative
};

inline CylEval cyl_axial(const CylindricalSoVParams& p, double x0) {
    if (p.branch == Branch::Hyperbolic) {
        return {p.B1 * std::cosh(p.freq * x0) + p.B2 * std::sinh(p.freq * x0),
                p.freq * (p.B1 * std::sinh(p.freq * x0) + p.B2 * std::cosh(p.freq * x0))};
    }
    return {p.B1 * std::cos(p.freq * x0) + p.B2 * std::sin(p.freq * x0),
            p.freq * (-p.B1 * std::sin(p.freq * x0) + p.B2 * std::cos(p.freq * x0))};
}

// Radial factor of the cylindrical family: rho^(alpha/2) times the Bessel
// pair of order sqrt(alpha^2 + 4 lambda^2)/2 at argument |freq| rho.
inline double cyl_radial(const CylindricalSoVParams& p, const CylindricalMode& m, double rho,
                         bool want_derivative) {
    using special::bessel;
    using special::bessel_derivative;
    using special::BesselKind;
    if (p.freq == 0.0)
        throw ZeroFrequency("zero frequency reduces the radial factor to the power-law pair "
                            "handled by euler_cylindrical");
    const double nu =
        0.5 * std::sqrt(p.alpha * p.alpha + 4.0 * static_cast<double>(m.lambda) * m.lambda);
    const double half = 0.5 * p.alpha;
    const double k = std::fabs(p.freq);
    const bool modified = p.branch == Branch::Trigonometric;
    const auto k1 = modified ? BesselKind::I : BesselKind::J;
    const auto k2 = modified ? BesselKind::K : BesselKind::Y;
    const double z = k * rho;
    const double pair = m.A1 * bessel(k1, nu, z) + m.A2 * bessel(k2, nu, z);
    if (!want_derivative) return std::pow(rho, half) * pair;
    const double pair_d =
        m.A1 * bessel_derivative(k1, nu, z) + m.A2 * bessel_derivative(k2, nu, z);
    return half * std::pow(rho, half - 1.0) * pair + std::pow(rho, half) * k * pair_d;
}

}  // namespace detail

// h(x0, theta, rho) = Xi(x0) * sum over modes of
// (C1 cos(lambda theta) + C2 sin(lambda theta)) * rho^(alpha/2) Z_nu(|freq| rho).
inline double theorem2_potential(const CylindricalSoVParams& p, double x0, double theta,
                                 double rho) {
    if (!(rho > 0.0)) throw DomainError("theorem2_potential requires rho > 0");
    if (p.freq == 0.0) throw ZeroFrequency("theorem2_potential requires freq != 0");
    const auto ax = detail::cyl_axial(p, x0);
    double sum = 0.0;
    for (const auto& m : p.modes) {
        const double s = m.C1 * std::cos(m.lambda * theta) + m.C2 * std::sin(m.lambda * theta);
        sum += s * detail::cyl_radial(p, m, rho, false);
    }
    return ax.xi * sum;
}

// Gradient in cylindrical components: (d/dx0, d/dtheta, d/drho).
inline Vec3 theorem2_gradient(const CylindricalSoVParams& p, double x0, double theta,
                              double rho) {
    if (!(rho > 0.0)) throw DomainError("theorem2_gradient requires rho > 0");
    if (p.freq == 0.0) throw ZeroFrequency("theorem2_gradient requires freq != 0");
    const auto ax = detail::cyl_axial(p, x0);
    double sum = 0.0, sum_dt = 0.0, sum_dr = 0.0;
    for (const auto& m : p.modes) {
        const double s = m.C1 * std::cos(m.lambda * theta) + m.C2 * std::sin(m.lambda * theta);
        const double s_d = m.lambda * (-m.C1 * std::sin(m.lambda * theta) +
                                       m.C2 * std::cos(m.lambda * theta));
        const double u = detail::cyl_radial(p, m, rho, false);
        sum += s * u;
        sum_dt += s_d * u;
        sum_dr += s * detail::cyl_radial(p, m, rho, true);
    }
    return {ax.xi_d * sum, ax.xi * sum_dt, ax.xi * sum_dr};
}

inline ScalarField3 theorem2_field(const CylindricalSoVParams& p) {
    return [p](const Vec3& x) {
        const double rho = std::hypot(x[1], x[2]);
        return theorem2_potential(p, x[0], std::atan2(x[2], x[1]), rho);
    };
}

// Power-law pair at zero frequency: exponents (alpha +/- sqrt(alpha^2+4 lambda^2))/2.
inline double euler_cylindrical(double alpha, int lambda, double A1, double A2, double rho) {
    if (!(rho > 0.0)) throw DomainError("euler_cylindrical requires rho > 0");
    const double root = std::sqrt(alpha * alpha + 4.0 * static_cast<double>(lambda) * lambda);
    return A1 * std::pow(rho, 0.5 * (alpha + root)) + A2 * std::pow(rho, 0.5 * (alpha - root));
}

inline double euler_cylindrical_derivative(double alpha, int lambda, double A1, double A2,
                                           double rho) {
    if (!(rho > 0.0)) throw DomainError("euler_cylindrical requires rho > 0");
    const double root = std::sqrt(alpha * alpha + 4.0 * static_cast<double>(lambda) * lambda);
    const double kp = 0.5 * (alpha + root), km = 0.5 * (alpha - root);
    return A1 * kp * std::pow(rho, kp - 1.0) + A2 * km * std::pow(rho, km - 1.0);
}

// Transverse family: no x0 dependence, h = Upsilon(rho) s(theta) with the
// power-law radial pair; E is its gradient in the (x1, x2) plane.
struct TransverseCoeffs {
    double A1 = 0.0, A2 = 0.0;  // radial pair
    double C1 = 0.0, C2 = 0.0;  // cos/sin pair in theta
};

struct TransverseSample {
    double h = 0.0;
    double E1 = 0.0, E2 = 0.0;
};

inline TransverseSample transverse_potential(double alpha, int lambda,
                                             const TransverseCoeffs& c, double theta,
                                             double rho) {
    if (!(rho > 0.0)) throw DomainError("transverse_potential requires rho > 0");
    const double ups = euler_cylindrical(alpha, lambda, c.A1, c.A2, rho);
    const double ups_d = euler_cylindrical_derivative(alpha, lambda, c.A1, c.A2, rho);
    const double s = c.C1 * std::cos(lambda * theta) + c.C2 * std::sin(lambda * theta);
    const double s_d =
        lambda * (-c.C1 * std::sin(lambda * theta) + c.C2 * std::cos(lambda * theta));
    TransverseSample out;
    out.h = ups * s;
    out.E1 = ups_d * s * std::cos(theta) - ups * s_d * std::sin(theta) / rho;
    out.E2 = ups_d * s * std::sin(theta) + ups * s_d * std::cos(theta) / rho;
    return out;
}

// The transverse field as a 3-component field over Cartesian points (E0 = 0).
inline TripleField transverse_field(double alpha, int lambda, const TransverseCoeffs& c) {
    return [alpha, lambda, c](const Vec3& x) -> Vec3 {
        const double rho = std::hypot(x[1], x[2]);
        const auto s = transverse_potential(alpha, lambda, c, std::atan2(x[2], x[1]), rho);
        return {0.0, s.E1, s.E2};
    };
}

// Meridional (lambda = 0) subclasses on the (x0, rho) chart, order alpha/2 as
// displayed; for alpha > 0 these coincide with the zero-mode of the
// cylindrical family.
inline ScalarField2 gaspt_hyperbolic(double alpha, double beta, double B1, double B2,
                                     double A1, double A2) {
    if (beta == 0.0) throw ZeroFrequency("gaspt_hyperbolic requires beta != 0");
    return [=](double x0, double rho) {
        if (!(rho > 0.0)) throw DomainError("gaspt_hyperbolic requires rho > 0");
        using special::bessel;
        using special::BesselKind;
        const double z = std::fabs(beta) * rho;
        const double rad = std::pow(rho, 0.5 * alpha) *
                           (A1 * bessel(BesselKind::J, 0.5 * alpha, z) +
                            A2 * bessel(BesselKind::Y, 0.5 * alpha, z));
        return (B1 * std::cosh(beta * x0) + B2 * std::sinh(beta * x0)) * rad;
    };
}

inline ScalarField2 gaspt_trigonometric(double alpha, int mu, double B1, double B2, double A1,
                                        double A2) {
    if (mu == 0) throw ZeroFrequency("gaspt_trigonometric requires mu != 0");
    return [=](double x0, double rho) {
        if (!(rho > 0.0)) throw DomainError("gaspt_trigonometric requires rho > 0");
        using special::bessel;
        using special::BesselKind;
        const double z = std::fabs(static_cast<double>(mu)) * rho;
        const double rad = std::pow(rho, 0.5 * alpha) *
                           (A1 * bessel(BesselKind::I, 0.5 * alpha, z) +
                            A2 * bessel(BesselKind::K, 0.5 * alpha, z));
        return (B1 * std::cos(mu * x0) + B2 * std::sin(mu * x0)) * rad;
    };
}

// Conjugate stream function by path integration: d(stream) =
// -rho^(1-alpha) g_rho dx0 + rho^(1-alpha) g_x0 drho, integrated along the
// straight chart segment from base. Path independence holds exactly when g
// solves the meridional second-order equation; tests check both.
inline std::function<double(const MeridianPoint&)> stokes_stream(
    std::function<double(const MeridianPoint&)> g, double alpha, MeridianPoint base,
    double base_value = 0.0, int panels = 8) {
    if (!(base.rho > 0.0)) throw DomainError("stokes_stream base requires rho > 0");
    if (panels < 1) throw InvalidParams("panels must be >= 1");
    return [g = std::move(g), alpha, base, base_value, panels](const MeridianPoint& p) {
        if (!(p.rho > 0.0)) throw DomainError("stokes_stream requires rho > 0");
        const double dx0 = p.x0 - base.x0;
        const double drho = p.rho - base.rho;
        if (dx0 == 0.0 && drho == 0.0) return base_value;
        auto integrand = [&](double t) {
            const double x0 = base.x0 + t * dx0;
            const double rho = base.rho + t * drho;
            auto g0 = [&](double s) { return g({s, rho, p.theta}); };
            auto gr = [&](double s) { return g({x0, s, p.theta}); };
            const double w = std::pow(rho, 1.0 - alpha);
            return w * (-fd::d1(gr, rho, fd::step1(rho)) * dx0 +
                        fd::d1(g0, x0, fd::step1(x0)) * drho);
        };
        return base_value + quad::gauss16_unit(integrand, panels);
    };
}

}  // namespace meridian::sov
