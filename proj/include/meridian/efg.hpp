#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "meridian/contour.hpp"
#include "meridian/core.hpp"
#include "meridian/errors.hpp"
#include "meridian/fd.hpp"

namespace meridian::efg {

// Meridional field E = (E0, E_rho cos theta, E_rho sin theta) on rho > 0 in a
// medium with inhomogeneity exponent alpha. E0 and Erho are required handles;
// the E_rho partials are optional and fall back to central differences.
struct MeridionalFieldSpec {
    double alpha = 1.0;
    std::function<double(const MeridianPoint&)> E0;
    std::function<double(const MeridianPoint&)> Erho;
    std::function<double(const MeridianPoint&)> dErho_dx0;
    std::function<double(const MeridianPoint&)> dErho_drho;
};

// Field-gradient tensor at one point with its spectral data. roots_closed is
// {azimuthal root, mean + sqrt(disc), mean - sqrt(disc)}; roots_numeric is the
// symmetric eigensolver output sorted ascending. I, II, III come from the
// assembled matrix (trace, principal-minor sum, determinant), not from the
// closed forms, so the two routes stay independent checks of each other.
struct EFGTensor {
    std::array<std::array<double, 3>, 3> m{};
    double I = 0.0;
    double II = 0.0;
    double III = 0.0;
    std::array<double, 3> roots_closed{};
    std::array<double, 3> roots_numeric{};
};

struct SingularResiduals {
    double f1;  // E_rho itself: zeros give the divergence branch
    double f2;  // quadratic branch from the determinant factorization
};

namespace detail {

inline void require_field(const MeridionalFieldSpec& f) {
    if (!f.E0 || !f.Erho) throw PartialUnavailable("field spec needs E0 and Erho handles");
    if (!std::isfinite(f.alpha)) throw InvalidParams("alpha must be finite");
}

struct ErhoDerivs {
    double val;
    double d_x0;
    double d_rho;
};

inline ErhoDerivs erho_derivs(const MeridionalFieldSpec& f, const MeridianPoint& p) {
    require_field(f);
    if (!(p.rho > 0.0)) throw DomainError("meridional field evaluated at rho <= 0");
    ErhoDerivs d{};
    d.val = f.Erho(p);
    if (f.dErho_dx0) {
        d.d_x0 = f.dErho_dx0(p);
    } else {
        d.d_x0 =
            fd::d1([&](double t) { return f.Erho({t, p.rho, p.theta}); }, p.x0, fd::step1(p.x0));
    }
    if (f.dErho_drho) {
        d.d_rho = f.dErho_drho(p);
    } else {
        const double h = fd::step1(p.rho);
        if (!(p.rho - h > 0.0)) throw StencilOutOfDomain("rho stencil crosses the axis");
        d.d_rho = fd::d1([&](double t) { return f.Erho({p.x0, t, p.theta}); }, p.rho, h);
    }
    if (!std::isfinite(d.val) || !std::isfinite(d.d_x0) || !std::isfinite(d.d_rho))
        throw NonFiniteSample("non-finite field sample");
    return d;
}

// Closed-form spectrum. The radicand is grouped as a sum of two squares, so
// it is nonnegative by construction and needs no clamping.
inline std::array<double, 3> closed_roots(const ErhoDerivs& d, double rho, double alpha) {
    const double lam0 = d.val / rho;
    const double mean = 0.5 * (alpha - 1.0) * lam0;
    const double s = std::hypot(mean - d.d_rho, d.d_x0);
    return {lam0, mean + s, mean - s};
}

}  // namespace detail

// E lifted to R^3 on the meridian with azimuth theta.
inline Vec3 lift_field(const MeridionalFieldSpec& f, double theta, const MeridianPoint& p) {
    detail::require_field(f);
    if (!(p.rho > 0.0)) throw DomainError("meridional field evaluated at rho <= 0");
    const MeridianPoint q{p.x0, p.rho, theta};
    const double e0 = f.E0(q);
    const double er = f.Erho(q);
    if (!std::isfinite(e0) || !std::isfinite(er))
        throw NonFiniteSample("non-finite field sample");
    return {e0, er * std::cos(theta), er * std::sin(theta)};
}

// Closed-form characteristic roots {lambda0, lambda+, lambda-} at p.
inline std::array<double, 3> char_roots(const MeridionalFieldSpec& f, const MeridianPoint& p,
                                        double alpha) {
    return detail::closed_roots(detail::erho_derivs(f, p), p.rho, alpha);
}

// Determinant factorization residuals: the singular set is {f1 = 0} u {f2 = 0}.
inline SingularResiduals singular_residuals(const MeridionalFieldSpec& f, const MeridianPoint& p,
                                            double alpha) {
    const auto d = detail::erho_derivs(f, p);
    const double lam0 = d.val / p.rho;
    return {d.val, d.d_x0 * d.d_x0 + d.d_rho * d.d_rho - (alpha - 1.0) * lam0 * d.d_rho};
}

// Field-gradient tensor at azimuth theta above the meridian point p.
inline EFGTensor efg_assemble(const MeridionalFieldSpec& f, double theta, const MeridianPoint& p) {
    const auto d = detail::erho_derivs(f, p);
    const double lam0 = d.val / p.rho;
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    EFGTensor t;
    t.m[0][0] = -d.d_rho + (f.alpha - 1.0) * lam0;
    t.m[0][1] = t.m[1][0] = d.d_x0 * c;
    t.m[0][2] = t.m[2][0] = d.d_x0 * s;
    t.m[1][1] = d.d_rho * c * c + lam0 * s * s;
    t.m[1][2] = t.m[2][1] = (d.d_rho - lam0) * c * s;
    t.m[2][2] = d.d_rho * s * s + lam0 * c * c;

    const auto& m = t.m;
    t.I = m[0][0] + m[1][1] + m[2][2];
    t.II = (m[0][0] * m[1][1] - m[0][1] * m[0][1]) + (m[0][0] * m[2][2] - m[0][2] * m[0][2]) +
           (m[1][1] * m[2][2] - m[1][2] * m[1][2]);
    t.III = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[1][2]) -
            m[0][1] * (m[0][1] * m[2][2] - m[1][2] * m[0][2]) +
            m[0][2] * (m[0][1] * m[1][2] - m[1][1] * m[0][2]);

    t.roots_closed = detail::closed_roots(d, p.rho, f.alpha);

    Eigen::Matrix3d M;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) M(a, b) = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M);
    if (es.info() != Eigen::Success) throw NonFiniteSample("symmetric eigensolver failed");
    for (int a = 0; a < 3; ++a) t.roots_numeric[static_cast<std::size_t>(a)] = es.eigenvalues()(a);
    return t;
}

// Field spec built from a meridian potential g by finite differences:
// E0 = dg/dx0, E_rho = dg/drho, with second-order stencils for the partials.
inline MeridionalFieldSpec field_from_potential(const std::function<double(const MeridianPoint&)>& g,
                                                double alpha) {
    if (!g) throw PartialUnavailable("potential handle is empty");
    MeridionalFieldSpec f;
    f.alpha = alpha;
    f.E0 = [g](const MeridianPoint& p) {
        return fd::d1([&](double t) { return g({t, p.rho, p.theta}); }, p.x0, fd::step1(p.x0));
    };
    f.Erho = [g](const MeridianPoint& p) {
        const double h = fd::step1(p.rho);
        if (!(p.rho - h > 0.0)) throw StencilOutOfDomain("rho stencil crosses the axis");
        return fd::d1([&](double t) { return g({p.x0, t, p.theta}); }, p.rho, h);
    };
    f.dErho_dx0 = [g](const MeridianPoint& p) {
        const double h = fd::step2(p.rho);
        if (!(p.rho - h > 0.0)) throw StencilOutOfDomain("rho stencil crosses the axis");
        return fd::dmixed([&](double a, double b) { return g({a, b, p.theta}); }, p.x0, p.rho,
                          fd::step2(p.x0), h);
    };
    f.dErho_drho = [g](const MeridianPoint& p) {
        const double h = fd::step2(p.rho);
        if (!(p.rho - h > 0.0)) throw StencilOutOfDomain("rho stencil crosses the axis");
        return fd::d2([&](double t) { return g({p.x0, t, p.theta}); }, p.rho, h);
    };
    return f;
}

// Zero sets of both singular-set branches inside the window, labeled "f1"
// and "f2". The window must stay in the half-plane rho > 0.
inline std::vector<contour::ContourPolyline> trace_singular_set(const MeridionalFieldSpec& f,
                                                                double alpha,
                                                                const contour::Window& w,
                                                                int resolution) {
    detail::require_field(f);
    w.validate();
    if (!(w.second_lo > 0.0)) throw DomainError("singular-set window needs rho > 0");
    auto out = contour::trace_zero_set([&](double x0, double rho) { return f.Erho({x0, rho}); }, w,
                                       resolution, "f1");
    auto second = contour::trace_zero_set(
        [&](double x0, double rho) { return singular_residuals(f, {x0, rho}, alpha).f2; }, w,
        resolution, "f2");
    out.insert(out.end(), std::make_move_iterator(second.begin()),
               std::make_move_iterator(second.end()));
    return out;
}

}  // namespace meridian::efg
