#pragma once

#include <cmath>
#include <functional>

#include "meridian/core.hpp"
#include "meridian/fd.hpp"
#include "meridian/quadrature.hpp"

namespace meridian {

// Chart-level elementary functions, acting on z = (x0, rho) in the I-plane.
// Principal branch: with rho > 0 the polar angle lies in (0, pi). No domain
// validation here; the ReducedQuaternion wrappers below enforce rho > 0.
inline AxialPair pow_chart(const AxialPair& z, int n) {
    const double r = std::hypot(z.u0, z.urho);
    const double phi = std::atan2(z.urho, z.u0);
    const double rn = std::pow(r, n);
    return {rn * std::cos(n * phi), rn * std::sin(n * phi)};
}

inline AxialPair exp_chart(const AxialPair& z) {
    const double e = std::exp(z.u0);
    return {e * std::cos(z.urho), e * std::sin(z.urho)};
}

inline AxialPair ln_chart(const AxialPair& z) {
    return {std::log(std::hypot(z.u0, z.urho)), std::atan2(z.urho, z.u0)};
}

// cos x = (exp(-Ix) + exp(Ix)) / 2.
inline AxialPair cos_chart(const AxialPair& z) {
    const AxialPair iz = z.rotate_i();
    return (exp_chart(-iz) + exp_chart(iz)) * 0.5;
}

// sin x = I (exp(-Ix) - exp(Ix)) / 2.
inline AxialPair sin_chart(const AxialPair& z) {
    const AxialPair iz = z.rotate_i();
    return ((exp_chart(-iz) - exp_chart(iz)) * 0.5).rotate_i();
}

inline AxialPair inverse_chart(const AxialPair& z) { return z.inverse(); }

namespace detail {
inline void require_off_axis(const ReducedQuaternion& x, const char* op) {
    if (!(x.rho() > 0.0))
        throw DegenerateAxis(std::string(op) + " requires rho > 0");
}
}  // namespace detail

// x^n = r^n (cos(n phi) + I sin(n phi)); n < 0 allowed since rho > 0 keeps r > 0.
inline ReducedQuaternion rq_pow(const ReducedQuaternion& x, int n) {
    detail::require_off_axis(x, "rq_pow");
    return x.lift(pow_chart(x.chart(), n));
}

enum class Elementary { Exp, Cos, Sin, Ln, Inverse, Conj };

inline ReducedQuaternion rq_elementary(Elementary f, const ReducedQuaternion& x) {
    if (f == Elementary::Conj) return x.conj();
    detail::require_off_axis(x, "rq_elementary");
    const AxialPair z = x.chart();
    switch (f) {
        case Elementary::Exp: return x.lift(exp_chart(z));
        case Elementary::Cos: return x.lift(cos_chart(z));
        case Elementary::Sin: return x.lift(sin_chart(z));
        case Elementary::Ln: return x.lift(ln_chart(z));
        case Elementary::Inverse: return x.lift(inverse_chart(z));
        default: break;
    }
    throw InvalidParams("unknown elementary function");
}

using ChartFn = std::function<AxialPair(const MeridianPoint&)>;

namespace detail {
struct ChartPartials {
    AxialPair d0;
    AxialPair drho;
};

inline ChartPartials chart_partials(const ChartFn& F, const MeridianPoint& p, double h) {
    if (!(h > 0.0)) throw InvalidParams("FD step must be positive");
    if (!(p.rho > h)) throw StencilOutOfDomain("FD stencil crosses rho = 0");
    auto along_x0 = [&](double t) { return F({t, p.rho, p.theta}); };
    auto along_rho = [&](double t) { return F({p.x0, t, p.theta}); };
    return {fd::d1(along_x0, p.x0, h), fd::d1(along_rho, p.rho, h)};
}
}  // namespace detail

inline double default_chart_step(const MeridianPoint& p) {
    return fd::step1(std::hypot(p.x0, p.rho));
}

// d/dx F = (dF/dx0 - I dF/drho) / 2; equals dF/dx0 for holomorphic F.
inline AxialPair radial_derivative(const ChartFn& F, const MeridianPoint& p, double h) {
    auto [d0, drho] = detail::chart_partials(F, p, h);
    return (d0 - drho.rotate_i()) * 0.5;
}

inline AxialPair radial_derivative(const ChartFn& F, const MeridianPoint& p) {
    return radial_derivative(F, p, default_chart_step(p));
}

// |(dF/dx0 + I dF/drho) / 2|; zero exactly on radially holomorphic functions.
inline double cr_residual(const ChartFn& F, const MeridianPoint& p, double h) {
    auto [d0, drho] = detail::chart_partials(F, p, h);
    return ((d0 + drho.rotate_i()) * 0.5).norm();
}

inline double cr_residual(const ChartFn& F, const MeridianPoint& p) {
    return cr_residual(F, p, default_chart_step(p));
}

// Path integral int F dx with dx = dx0 + I drho, evaluated per segment by
// composite 16-point Gauss-Legendre with `panels` panels, then one refinement
// pass (doubled panel count); the refined value is returned.
inline AxialPair line_integral(const ChartFn& F, const PolylinePath& path, int panels = 2) {
    if (panels < 2) throw InvalidParams("line_integral needs at least 2 panels per segment");
    auto pass = [&](int n_panels) {
        AxialPair total{0.0, 0.0};
        const auto& v = path.vertices();
        for (std::size_t s = 0; s + 1 < v.size(); ++s) {
            const AxialPair a = v[s];
            const AxialPair dx = v[s + 1] - v[s];
            auto integrand = [&](double t) {
                const AxialPair z = a + dx * t;
                return F({z.u0, z.urho}) * dx;
            };
            total += quad::gauss16_unit(integrand, n_panels);
        }
        return total;
    };
    // Refinement pass: the returned value uses the doubled panel count.
    return pass(2 * panels);
}

// Antiderivative G with G(base) = base_value, realized as a straight-segment
// path integral from base. Meaningful when F is radially holomorphic on a
// simply connected domain containing the segments (path independence).
inline std::function<AxialPair(const MeridianPoint&)> primitive(ChartFn F, MeridianPoint base,
                                                                AxialPair base_value) {
    return [F = std::move(F), base, base_value](const MeridianPoint& p) {
        if (p.x0 == base.x0 && p.rho == base.rho) return base_value;
        PolylinePath seg({AxialPair{base.x0, base.rho}, AxialPair{p.x0, p.rho}});
        return base_value + line_integral(F, seg);
    };
}

}  // namespace meridian
