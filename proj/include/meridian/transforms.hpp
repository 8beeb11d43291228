#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "meridian/axial.hpp"
#include "meridian/core.hpp"
#include "meridian/errors.hpp"
#include "meridian/gallery.hpp"
#include "meridian/quadrature.hpp"

namespace meridian::transforms {

enum class Support { OneSided, TwoSided };

// Classical real-valued original with declared growth metadata: on its
// support, |eval(tau)| <= amplitude (1 + |tau|) e^{-decay_rate |tau|}.
// Transform convergence is decided from this bound alone, never probed.
struct Original {
    std::function<double(double)> eval;
    Support support = Support::OneSided;
    double decay_rate = 0.0;
    double amplitude = 1.0;
};

struct QuadratureSettings {
    double abs_tol = 1e-10;    // per-component absolute target
    double margin = 0.05;      // required slack between decay and kernel growth
    double tail_weight = 0.1;  // truncated tail must stay below abs_tol * tail_weight
};

inline Original original_one() {
    return {[](double) { return 1.0; }, Support::OneSided, 0.0, 1.0};
}

inline Original original_tau() {
    return {[](double t) { return t; }, Support::OneSided, 0.0, 1.0};
}

inline Original original_exp_decay(double a) {
    if (!std::isfinite(a) || !(a > 0.0)) throw InvalidParams("exp_decay original needs a > 0");
    return {[a](double t) { return std::exp(-a * t); }, Support::OneSided, a, 1.0};
}

inline Original original_exp_abs(double a) {
    if (!std::isfinite(a) || !(a > 0.0)) throw InvalidParams("exp_abs original needs a > 0");
    return {[a](double t) { return std::exp(-a * std::fabs(t)); }, Support::TwoSided, a, 1.0};
}

namespace detail {

inline void check_original(const Original& o) {
    if (!o.eval) throw InvalidParams("original has no eval handle");
    if (!std::isfinite(o.decay_rate)) throw InvalidParams("decay_rate must be finite");
    if (!std::isfinite(o.amplitude) || !(o.amplitude > 0.0))
        throw InvalidParams("amplitude must be finite and positive");
}

// v * e^g kept finite while the true product is in range, even when e^g
// alone overflows against a denormal v.
inline double decayed_exp(double v, double g) {
    if (v == 0.0) return 0.0;
    if (std::fabs(g) < 600.0) return v * std::exp(g);
    return std::copysign(std::exp(g + std::log(std::fabs(v))), v);
}

// Smallest cut T with amplitude * int_T^inf (1 + tau) e^{-kappa tau} dtau
// below bound; the integral is e^{-kappa T} ((1 + T)/kappa + 1/kappa^2).
inline double tail_cut(double amplitude, double kappa, double bound) {
    double T = 1.0 / kappa;
    const double step = std::fmax(1.0 / kappa, 1.0);
    for (int i = 0; i < 400; ++i) {
        const double tail = amplitude * std::exp(-kappa * T) *
                            ((1.0 + T) / kappa + 1.0 / (kappa * kappa));
        if (tail <= bound) return T;
        T += step;
    }
    throw ConvergenceDomain("tail bound not reachable at the declared decay rate");
}

// int_0^inf eta(tau) e^{-s0 tau} (cos(s1 tau) - I sin(s1 tau)) dtau at an
// unrestricted I-plane argument (s0, s1).
inline AxialPair lf_one_sided_at(const Original& o, double s0, double s1,
                                 const QuadratureSettings& q) {
    const double kappa = o.decay_rate + s0;
    if (!(kappa >= q.margin))
        throw ConvergenceDomain("kernel growth exceeds the declared decay rate");
    const double T = tail_cut(o.amplitude, kappa, q.abs_tol * q.tail_weight);
    const double u0 = quad::adaptive(
        [&](double t) { return decayed_exp(o.eval(t), -s0 * t) * std::cos(s1 * t); }, 0.0, T,
        q.abs_tol);
    const double ur = quad::adaptive(
        [&](double t) { return decayed_exp(o.eval(t), -s0 * t) * std::sin(s1 * t); }, 0.0, T,
        q.abs_tol);
    return {u0, -ur};
}

inline AxialPair lf_two_sided_at(const Original& o, double s0, double s1,
                                 const QuadratureSettings& q) {
    const double kp = o.decay_rate + s0;
    const double km = o.decay_rate - s0;
    if (!(kp >= q.margin) || !(km >= q.margin))
        throw ConvergenceDomain("kernel growth exceeds the declared decay rate on one tail");
    const double bound = 0.5 * q.abs_tol * q.tail_weight;
    const double tp = tail_cut(o.amplitude, kp, bound);
    const double tm = tail_cut(o.amplitude, km, bound);
    // Integrate the halves separately: two-sided originals (e.g. e^{-a|tau|})
    // may have a kink at tau = 0 that stalls the adaptive estimate.
    auto both = [&](const std::function<double(double)>& f) {
        return quad::adaptive(f, -tm, 0.0, 0.5 * q.abs_tol) +
               quad::adaptive(f, 0.0, tp, 0.5 * q.abs_tol);
    };
    const double u0 =
        both([&](double t) { return decayed_exp(o.eval(t), -s0 * t) * std::cos(s1 * t); });
    const double ur =
        both([&](double t) { return decayed_exp(o.eval(t), -s0 * t) * std::sin(s1 * t); });
    return {u0, -ur};
}

}  // namespace detail

// Kernel e^{-x tau} over the original's support, evaluated in the meridian
// chart at x = x0 + I rho.
inline AxialPair laplace_fueter(const Original& o, const MeridianPoint& p,
                                const QuadratureSettings& q = {}) {
    detail::check_original(o);
    if (!(p.rho > 0.0)) throw DomainError("transform point needs rho > 0");
    return o.support == Support::OneSided ? detail::lf_one_sided_at(o, p.x0, p.rho, q)
                                          : detail::lf_two_sided_at(o, p.x0, p.rho, q);
}

// Same kernel integral at an unrestricted I-plane argument (s0, s1); the
// Fourier kernel identities evaluate it at y = I x = (-rho, x0).
inline AxialPair laplace_fueter_at(const Original& o, double s0, double s1,
                                   const QuadratureSettings& q = {}) {
    detail::check_original(o);
    return o.support == Support::OneSided ? detail::lf_one_sided_at(o, s0, s1, q)
                                          : detail::lf_two_sided_at(o, s0, s1, q);
}

// Gamma of the negated argument: the two-sided kernel integral of e^{-e^tau}.
// The integral converges for x0 < 0, where the u0 component tends to
// Gamma(-x0) as rho -> 0. conjugate flips the axial sign, giving the
// radially anti-holomorphic partner that the field displays use.
inline AxialPair gamma_rq(const MeridianPoint& p, bool conjugate = false,
                          const QuadratureSettings& q = {}) {
    if (!(p.rho > 0.0)) throw DomainError("transform point needs rho > 0");
    if (!(p.x0 <= -q.margin))
        throw ConvergenceDomain("gamma transform converges for x0 < 0 only");
    const double bound = 0.5 * q.abs_tol * q.tail_weight;
    const double ax = -p.x0;
    // tau -> -inf: integrand below e^{-ax |tau|}, so the tail is e^{-ax T}/ax.
    const double tm = std::fmax(1.0, -std::log(bound * ax) / ax);
    // tau -> +inf: integrand is e^{-phi} with phi = e^tau - ax tau; once
    // e^T >= ax + 1 the exponent climbs at unit rate and e^{-phi(T)} bounds
    // the tail.
    double tp = std::fmax(1.0, std::log(ax + 1.0));
    for (int i = 0; i < 200 && std::exp(tp) - ax * tp < -std::log(bound); ++i) tp += 1.0;
    const double u0 = quad::adaptive(
        [&](double t) { return std::exp(-std::exp(t) - p.x0 * t) * std::cos(p.rho * t); }, -tm, tp,
        q.abs_tol);
    const double ur = quad::adaptive(
        [&](double t) { return std::exp(-std::exp(t) - p.x0 * t) * std::sin(p.rho * t); }, -tm, tp,
        q.abs_tol);
    return {u0, conjugate ? ur : -ur};
}

enum class FourierKind { Cosine, Sine, Exponential };

// Kernels cos(x tau), sin(x tau), e^{-I x tau} over [0, inf). All grow like
// e^{rho tau}, so the original must decay faster than the point's rho. The
// exponential kind is the literal combination cosine - I sine on shared
// quadrature results.
inline AxialPair fourier_fueter(const Original& o, FourierKind kind, const MeridianPoint& p,
                                const QuadratureSettings& q = {}) {
    detail::check_original(o);
    if (o.support != Support::OneSided)
        throw InvalidParams("fourier kinds take one-sided originals");
    if (!(p.rho > 0.0)) throw DomainError("transform point needs rho > 0");
    const double kappa = o.decay_rate - p.rho;
    if (!(kappa >= q.margin))
        throw ConvergenceDomain("kernel growth e^{rho tau} exceeds the declared decay rate");
    if (kind == FourierKind::Exponential) {
        const AxialPair c = fourier_fueter(o, FourierKind::Cosine, p, q);
        const AxialPair s = fourier_fueter(o, FourierKind::Sine, p, q);
        return c - s.rotate_i();
    }
    const double T = detail::tail_cut(o.amplitude, kappa, q.abs_tol * q.tail_weight);
    // cosh and sinh split into half-exponentials so the decayed products stay
    // finite at large rho tau.
    const auto even = [&](double t) {
        const double v = o.eval(t);
        return 0.5 * (detail::decayed_exp(v, p.rho * t) + detail::decayed_exp(v, -p.rho * t));
    };
    const auto odd = [&](double t) {
        const double v = o.eval(t);
        return 0.5 * (detail::decayed_exp(v, p.rho * t) - detail::decayed_exp(v, -p.rho * t));
    };
    if (kind == FourierKind::Cosine) {
        const double u0 =
            quad::adaptive([&](double t) { return even(t) * std::cos(p.x0 * t); }, 0.0, T, q.abs_tol);
        const double ur =
            quad::adaptive([&](double t) { return odd(t) * std::sin(p.x0 * t); }, 0.0, T, q.abs_tol);
        return {u0, -ur};
    }
    const double u0 =
        quad::adaptive([&](double t) { return even(t) * std::sin(p.x0 * t); }, 0.0, T, q.abs_tol);
    const double ur =
        quad::adaptive([&](double t) { return odd(t) * std::cos(p.x0 * t); }, 0.0, T, q.abs_tol);
    return {u0, ur};
}

enum class DivergenceSource { LaplaceOneSided, Gamma, FourierCosine, FourierSine, FourierExponential };

inline const char* divergence_source_name(DivergenceSource s) {
    switch (s) {
        case DivergenceSource::LaplaceOneSided: return "lf_one";
        case DivergenceSource::Gamma: return "gamma";
        case DivergenceSource::FourierCosine: return "ffc";
        case DivergenceSource::FourierSine: return "ffs";
        case DivergenceSource::FourierExponential: return "ffe";
    }
    throw InvalidParams("unknown divergence source");
}

inline DivergenceSource divergence_source_from_name(const std::string& s) {
    if (s == "lf_one") return DivergenceSource::LaplaceOneSided;
    if (s == "gamma") return DivergenceSource::Gamma;
    if (s == "ffc") return DivergenceSource::FourierCosine;
    if (s == "ffs") return DivergenceSource::FourierSine;
    if (s == "ffe") return DivergenceSource::FourierExponential;
    throw InvalidParams("unknown divergence source: " + s);
}

// Displayed zero-divergence integral of the source's electrostatic model as
// a callable of (x0, rho); its zeros are the divergence-free loci. The
// original is ignored for the gamma source, whose original is fixed.
inline std::function<double(double, double)> zero_divergence_residual(
    DivergenceSource src, const Original& o, const QuadratureSettings& q = {}) {
    switch (src) {
        case DivergenceSource::LaplaceOneSided:
            return [o, q](double x0, double rho) { return -laplace_fueter(o, {x0, rho}, q).urho; };
        case DivergenceSource::Gamma:
            return [q](double x0, double rho) { return -gamma_rq({x0, rho}, false, q).urho; };
        case DivergenceSource::FourierCosine:
            return [o, q](double x0, double rho) {
                return -fourier_fueter(o, FourierKind::Cosine, {x0, rho}, q).urho;
            };
        case DivergenceSource::FourierSine:
            return [o, q](double x0, double rho) {
                return fourier_fueter(o, FourierKind::Sine, {x0, rho}, q).urho;
            };
        case DivergenceSource::FourierExponential:
            return [o, q](double x0, double rho) {
                return -fourier_fueter(o, FourierKind::Exponential, {x0, rho}, q).urho;
            };
    }
    throw InvalidParams("unknown divergence source");
}

// Gallery counterpart: the divergence branch of the two-mode exponential
// field is E_rho itself.
inline std::function<double(double, double)> zero_divergence_residual(
    const gallery::ExpPairParams& p) {
    gallery::validate(p);
    return [f = gallery::make_field(p)](double x0, double rho) { return f.Erho({x0, rho}); };
}

// Ascending zeros in rho of the residual at fixed x0: an even sign-change
// scan over [rho_lo, rho_hi] followed by bisection on each bracket.
inline std::vector<double> zero_divergence_roots(const std::function<double(double, double)>& resid,
                                                 double x0, double rho_lo, double rho_hi,
                                                 int scan_points = 200) {
    if (!(rho_lo > 0.0) || !(rho_hi > rho_lo)) throw DomainError("need 0 < rho_lo < rho_hi");
    if (scan_points < 2) throw InvalidParams("zero scan needs at least 2 points");
    std::vector<double> roots;
    const double dr = (rho_hi - rho_lo) / scan_points;
    double prev_r = rho_lo;
    double prev_v = resid(x0, prev_r);
    for (int i = 1; i <= scan_points; ++i) {
        const double r = rho_lo + dr * i;
        const double v = resid(x0, r);
        if (!std::isfinite(prev_v) || !std::isfinite(v))
            throw NonFiniteSample("non-finite residual during zero scan");
        if (prev_v == 0.0) {
            roots.push_back(prev_r);
        } else if (v != 0.0 && std::signbit(prev_v) != std::signbit(v)) {
            double a = prev_r;
            double b = r;
            double fa = prev_v;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = resid(x0, m);
                if (fm == 0.0) {
                    a = m;
                    b = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_r = r;
        prev_v = v;
    }
    if (prev_v == 0.0) roots.push_back(prev_r);
    return roots;
}

}  // namespace meridian::transforms
