#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "meridian/core.hpp"
#include "meridian/efg.hpp"
#include "meridian/errors.hpp"
#include "meridian/special.hpp"

namespace meridian::gallery {

// Six worked meridional fields. The Bessel pair lives in an alpha = 0 medium,
// the other four in alpha = 1 (harmonic) media.
enum class Example { BesselJ0, BesselI0, Mobius, Cubic, Power, ExpPair };

struct BesselJ0Params {
    double beta = 1.0;  // nonzero
};

struct BesselI0Params {
    double mu = 1.0;  // nonzero
};

// Inversive-linear field with unit determinant: b = (a d - 1) / c.
struct MobiusParams {
    double a = 0.0;
    double c = 1.0;  // nonzero
    double d = 0.0;
};

struct CubicParams {
    double a3 = 1.0;
    double a1 = 0.0;
};

struct PowerParams {
    double am1 = 1.0;
    double am2 = -1.0;
};

struct ExpPairParams {
    double b1 = 1.0;  // positive
    double b2 = 2.0;  // positive
};

using GalleryParams = std::variant<BesselJ0Params, BesselI0Params, MobiusParams, CubicParams,
                                   PowerParams, ExpPairParams>;

inline const char* example_name(Example e) {
    switch (e) {
        case Example::BesselJ0: return "bessel_j0";
        case Example::BesselI0: return "bessel_i0";
        case Example::Mobius: return "mobius";
        case Example::Cubic: return "cubic";
        case Example::Power: return "power";
        case Example::ExpPair: return "exp_pair";
    }
    throw InvalidParams("unknown gallery example");
}

inline Example example_from_name(const std::string& name) {
    if (name == "bessel_j0") return Example::BesselJ0;
    if (name == "bessel_i0") return Example::BesselI0;
    if (name == "mobius") return Example::Mobius;
    if (name == "cubic") return Example::Cubic;
    if (name == "power") return Example::Power;
    if (name == "exp_pair" || name == "exp") return Example::ExpPair;
    throw InvalidParams("unknown gallery example: " + name);
}

namespace detail {

inline void check_finite(std::initializer_list<double> vals) {
    for (const double v : vals)
        if (!std::isfinite(v)) throw InvalidParams("gallery parameter must be finite");
}

// J0'(z) = -J1(z) and J0''(z) = -J1'(z); I0'(z) = I1(z) and I0''(z) = I1'(z).
inline double j0v(double z) { return special::bessel(special::BesselKind::J, 0.0, z); }
inline double j0d(double z) { return special::bessel_derivative(special::BesselKind::J, 0.0, z); }
inline double j0dd(double z) { return -special::bessel_derivative(special::BesselKind::J, 1.0, z); }
inline double i0v(double z) { return special::bessel(special::BesselKind::I, 0.0, z); }
inline double i0d(double z) { return special::bessel_derivative(special::BesselKind::I, 0.0, z); }
inline double i0dd(double z) { return special::bessel_derivative(special::BesselKind::I, 1.0, z); }

}  // namespace detail

inline void validate(const BesselJ0Params& p) {
    detail::check_finite({p.beta});
    if (p.beta == 0.0) throw InvalidParams("bessel_j0 needs beta != 0");
}

inline void validate(const BesselI0Params& p) {
    detail::check_finite({p.mu});
    if (p.mu == 0.0) throw InvalidParams("bessel_i0 needs mu != 0");
}

inline void validate(const MobiusParams& p) {
    detail::check_finite({p.a, p.c, p.d});
    if (p.c == 0.0) throw InvalidParams("mobius needs c != 0");
}

inline void validate(const CubicParams& p) { detail::check_finite({p.a3, p.a1}); }

inline void validate(const PowerParams& p) { detail::check_finite({p.am1, p.am2}); }

inline void validate(const ExpPairParams& p) {
    detail::check_finite({p.b1, p.b2});
    if (!(p.b1 > 0.0) || !(p.b2 > 0.0)) throw InvalidParams("exp_pair needs b1, b2 > 0");
}

// g = e^{beta x0} J0(beta rho), alpha = 0. Derivatives use k = |beta| through
// the even/odd reflections of J0 and J0'.
inline efg::MeridionalFieldSpec make_field(const BesselJ0Params& p) {
    validate(p);
    const double b = p.beta;
    const double k = std::fabs(b);
    efg::MeridionalFieldSpec f;
    f.alpha = 0.0;
    f.E0 = [b, k](const MeridianPoint& q) { return b * std::exp(b * q.x0) * detail::j0v(k * q.rho); };
    f.Erho = [b, k](const MeridianPoint& q) {
        return k * std::exp(b * q.x0) * detail::j0d(k * q.rho);
    };
    f.dErho_dx0 = [b, k](const MeridianPoint& q) {
        return b * k * std::exp(b * q.x0) * detail::j0d(k * q.rho);
    };
    f.dErho_drho = [b, k](const MeridianPoint& q) {
        return k * k * std::exp(b * q.x0) * detail::j0dd(k * q.rho);
    };
    return f;
}

// g = cos(mu x0) I0(mu rho), alpha = 0.
inline efg::MeridionalFieldSpec make_field(const BesselI0Params& p) {
    validate(p);
    const double mu = p.mu;
    const double k = std::fabs(mu);
    efg::MeridionalFieldSpec f;
    f.alpha = 0.0;
    f.E0 = [mu, k](const MeridianPoint& q) {
        return -mu * std::sin(mu * q.x0) * detail::i0v(k * q.rho);
    };
    f.Erho = [mu, k](const MeridianPoint& q) {
        return k * std::cos(mu * q.x0) * detail::i0d(k * q.rho);
    };
    f.dErho_dx0 = [mu, k](const MeridianPoint& q) {
        return -mu * k * std::sin(mu * q.x0) * detail::i0d(k * q.rho);
    };
    f.dErho_drho = [mu, k](const MeridianPoint& q) {
        return k * k * std::cos(mu * q.x0) * detail::i0dd(k * q.rho);
    };
    return f;
}

// E0 = a/c - A/(c^2 D), E_rho = -rho/(c^2 D) with A = x0 + d/c, D = A^2 + rho^2.
inline efg::MeridionalFieldSpec make_field(const MobiusParams& p) {
    validate(p);
    const double a = p.a;
    const double c2 = p.c * p.c;
    const double shift = p.d / p.c;
    const auto AD = [shift](const MeridianPoint& q) {
        const double A = q.x0 + shift;
        const double D = A * A + q.rho * q.rho;
        if (D == 0.0) throw PoleError("mobius field evaluated at its pole");
        return std::array<double, 2>{A, D};
    };
    efg::MeridionalFieldSpec f;
    f.alpha = 1.0;
    f.E0 = [a, c2, AD, cc = p.c](const MeridianPoint& q) {
        const auto [A, D] = AD(q);
        return a / cc - A / (c2 * D);
    };
    f.Erho = [c2, AD](const MeridianPoint& q) {
        const auto [A, D] = AD(q);
        (void)A;
        return -q.rho / (c2 * D);
    };
    f.dErho_dx0 = [c2, AD](const MeridianPoint& q) {
        const auto [A, D] = AD(q);
        return 2.0 * A * q.rho / (c2 * D * D);
    };
    f.dErho_drho = [c2, AD](const MeridianPoint& q) {
        const auto [A, D] = AD(q);
        return (q.rho * q.rho - A * A) / (c2 * D * D);
    };
    return f;
}

// E0 = a3 x0 (x0^2 - 3 rho^2) + a1 x0, E_rho = a3 rho (rho^2 - 3 x0^2) - a1 rho.
inline efg::MeridionalFieldSpec make_field(const CubicParams& p) {
    validate(p);
    const double a3 = p.a3;
    const double a1 = p.a1;
    efg::MeridionalFieldSpec f;
    f.alpha = 1.0;
    f.E0 = [a3, a1](const MeridianPoint& q) {
        return a3 * q.x0 * (q.x0 * q.x0 - 3.0 * q.rho * q.rho) + a1 * q.x0;
    };
    f.Erho = [a3, a1](const MeridianPoint& q) {
        return a3 * q.rho * (q.rho * q.rho - 3.0 * q.x0 * q.x0) - a1 * q.rho;
    };
    f.dErho_dx0 = [a3](const MeridianPoint& q) { return -6.0 * a3 * q.x0 * q.rho; };
    f.dErho_drho = [a3, a1](const MeridianPoint& q) {
        return 3.0 * a3 * (q.rho * q.rho - q.x0 * q.x0) - a1;
    };
    return f;
}

// E0 = am1 x0 / r^2 + am2 (x0^2 - rho^2) / r^4, E_rho = am1 rho / r^2
// + 2 am2 x0 rho / r^4 with r^2 = x0^2 + rho^2.
inline efg::MeridionalFieldSpec make_field(const PowerParams& p) {
    validate(p);
    const double a1 = p.am1;
    const double a2 = p.am2;
    const auto r2_of = [](const MeridianPoint& q) {
        const double r2 = q.x0 * q.x0 + q.rho * q.rho;
        if (r2 == 0.0) throw PoleError("power field evaluated at the origin");
        return r2;
    };
    efg::MeridionalFieldSpec f;
    f.alpha = 1.0;
    f.E0 = [a1, a2, r2_of](const MeridianPoint& q) {
        const double r2 = r2_of(q);
        return a1 * q.x0 / r2 + a2 * (q.x0 * q.x0 - q.rho * q.rho) / (r2 * r2);
    };
    f.Erho = [a1, a2, r2_of](const MeridianPoint& q) {
        const double r2 = r2_of(q);
        return a1 * q.rho / r2 + 2.0 * a2 * q.x0 * q.rho / (r2 * r2);
    };
    f.dErho_dx0 = [a1, a2, r2_of](const MeridianPoint& q) {
        const double r2 = r2_of(q);
        const double r4 = r2 * r2;
        return -2.0 * a1 * q.x0 * q.rho / r4 +
               2.0 * a2 * q.rho * (r2 - 4.0 * q.x0 * q.x0) / (r4 * r2);
    };
    f.dErho_drho = [a1, a2, r2_of](const MeridianPoint& q) {
        const double r2 = r2_of(q);
        const double r4 = r2 * r2;
        return a1 * (q.x0 * q.x0 - q.rho * q.rho) / r4 +
               2.0 * a2 * q.x0 * (r2 - 4.0 * q.rho * q.rho) / (r4 * r2);
    };
    return f;
}

// Difference of two exponential modes, E = E^(1) - E^(2), with
// E^(k) = (e^{-b_k x0} cos(b_k rho), e^{-b_k x0} sin(b_k rho)).
inline efg::MeridionalFieldSpec make_field(const ExpPairParams& p) {
    validate(p);
    const double b1 = p.b1;
    const double b2 = p.b2;
    efg::MeridionalFieldSpec f;
    f.alpha = 1.0;
    f.E0 = [b1, b2](const MeridianPoint& q) {
        return std::exp(-b1 * q.x0) * std::cos(b1 * q.rho) -
               std::exp(-b2 * q.x0) * std::cos(b2 * q.rho);
    };
    f.Erho = [b1, b2](const MeridianPoint& q) {
        return std::exp(-b1 * q.x0) * std::sin(b1 * q.rho) -
               std::exp(-b2 * q.x0) * std::sin(b2 * q.rho);
    };
    f.dErho_dx0 = [b1, b2](const MeridianPoint& q) {
        return -b1 * std::exp(-b1 * q.x0) * std::sin(b1 * q.rho) +
               b2 * std::exp(-b2 * q.x0) * std::sin(b2 * q.rho);
    };
    f.dErho_drho = [b1, b2](const MeridianPoint& q) {
        return b1 * std::exp(-b1 * q.x0) * std::cos(b1 * q.rho) -
               b2 * std::exp(-b2 * q.x0) * std::cos(b2 * q.rho);
    };
    return f;
}

inline efg::MeridionalFieldSpec make_field(Example e, const GalleryParams& p) {
    const auto wrong = [&]() -> efg::MeridionalFieldSpec {
        throw InvalidParams(std::string("parameter record does not match example ") +
                            example_name(e));
    };
    switch (e) {
        case Example::BesselJ0:
            return std::holds_alternative<BesselJ0Params>(p) ? make_field(std::get<BesselJ0Params>(p))
                                                             : wrong();
        case Example::BesselI0:
            return std::holds_alternative<BesselI0Params>(p) ? make_field(std::get<BesselI0Params>(p))
                                                             : wrong();
        case Example::Mobius:
            return std::holds_alternative<MobiusParams>(p) ? make_field(std::get<MobiusParams>(p))
                                                           : wrong();
        case Example::Cubic:
            return std::holds_alternative<CubicParams>(p) ? make_field(std::get<CubicParams>(p))
                                                          : wrong();
        case Example::Power:
            return std::holds_alternative<PowerParams>(p) ? make_field(std::get<PowerParams>(p))
                                                          : wrong();
        case Example::ExpPair:
            return std::holds_alternative<ExpPairParams>(p) ? make_field(std::get<ExpPairParams>(p))
                                                            : wrong();
    }
    throw InvalidParams("unknown gallery example");
}

// Scalar meridian potential g with E0 = dg/dx0 and E_rho = dg/drho; every
// example has one since its curl vanishes.
inline std::function<double(const MeridianPoint&)> meridian_potential(Example e,
                                                                      const GalleryParams& p) {
    switch (e) {
        case Example::BesselJ0: {
            const auto prm = std::get<BesselJ0Params>(p);
            validate(prm);
            const double b = prm.beta;
            const double k = std::fabs(b);
            return [b, k](const MeridianPoint& q) {
                return std::exp(b * q.x0) * detail::j0v(k * q.rho);
            };
        }
        case Example::BesselI0: {
            const auto prm = std::get<BesselI0Params>(p);
            validate(prm);
            const double mu = prm.mu;
            const double k = std::fabs(mu);
            return [mu, k](const MeridianPoint& q) {
                return std::cos(mu * q.x0) * detail::i0v(k * q.rho);
            };
        }
        case Example::Mobius: {
            const auto prm = std::get<MobiusParams>(p);
            validate(prm);
            const double a = prm.a;
            const double c = prm.c;
            const double shift = prm.d / prm.c;
            return [a, c, shift](const MeridianPoint& q) {
                const double A = q.x0 + shift;
                const double D = A * A + q.rho * q.rho;
                if (D == 0.0) throw PoleError("mobius potential evaluated at its pole");
                return a * q.x0 / c - 0.5 * std::log(D) / (c * c);
            };
        }
        case Example::Cubic: {
            const auto prm = std::get<CubicParams>(p);
            validate(prm);
            return [prm](const MeridianPoint& q) {
                const double x2 = q.x0 * q.x0;
                const double p2 = q.rho * q.rho;
                return 0.25 * prm.a3 * (x2 * x2 + p2 * p2) - 1.5 * prm.a3 * x2 * p2 +
                       0.5 * prm.a1 * (x2 - p2);
            };
        }
        case Example::Power: {
            const auto prm = std::get<PowerParams>(p);
            validate(prm);
            return [prm](const MeridianPoint& q) {
                const double r2 = q.x0 * q.x0 + q.rho * q.rho;
                if (r2 == 0.0) throw PoleError("power potential evaluated at the origin");
                return 0.5 * prm.am1 * std::log(r2) - prm.am2 * q.x0 / r2;
            };
        }
        case Example::ExpPair: {
            const auto prm = std::get<ExpPairParams>(p);
            validate(prm);
            return [prm](const MeridianPoint& q) {
                return -std::exp(-prm.b1 * q.x0) * std::cos(prm.b1 * q.rho) / prm.b1 +
                       std::exp(-prm.b2 * q.x0) * std::cos(prm.b2 * q.rho) / prm.b2;
            };
        }
    }
    throw InvalidParams("unknown gallery example");
}

// One implicit branch of a predicted singular surface; residual vanishes on
// the branch. label names the residual family it predicts ("f1" or "f2").
struct SurfaceBranch {
    std::string label;
    std::string equation;
    std::function<double(double, double)> residual;  // (x0, rho)
};

struct PredictedSurface {
    std::vector<SurfaceBranch> branches;  // empty: the predicted set is empty

    bool contains(double x0, double rho, double tol = 1e-9) const {
        for (const auto& b : branches)
            if (std::fabs(b.residual(x0, rho)) <= tol) return true;
        return false;
    }
};

// Closed-form singular surfaces where the worked examples display one.
// bessel_i0 has none (NoClosedForm); mobius has a provably empty set. The
// second bessel_j0 branch reproduces the displayed expression verbatim, with
// derivatives taken in the Bessel argument.
inline PredictedSurface predicted_singular_surface(Example e, const GalleryParams& p) {
    PredictedSurface out;
    switch (e) {
        case Example::BesselJ0: {
            const auto prm = std::get<BesselJ0Params>(p);
            validate(prm);
            const double b = prm.beta;
            const double k = std::fabs(b);
            const double sgn = b < 0.0 ? -1.0 : 1.0;
            out.branches.push_back(
                {"f1", "J0'(beta rho) = 0", [k](double, double rho) { return detail::j0d(k * rho); }});
            out.branches.push_back(
                {"f2", "beta^2 J0'(beta rho)^2 + J0''(beta rho)^2 + J0'(beta rho) J0''(beta rho) / rho = 0",
                 [b, k, sgn](double, double rho) {
                     const double d1 = sgn * detail::j0d(k * rho);
                     const double d2 = detail::j0dd(k * rho);
                     return b * b * d1 * d1 + d2 * d2 + d1 * d2 / rho;
                 }});
            return out;
        }
        case Example::BesselI0:
            throw NoClosedForm("bessel_i0 displays no closed-form singular surface");
        case Example::Mobius: {
            validate(std::get<MobiusParams>(p));
            return out;  // E_rho < 0 and det factor never vanish off the axis
        }
        case Example::Cubic: {
            const auto prm = std::get<CubicParams>(p);
            validate(prm);
            out.branches.push_back({"f1", "3 a3 x0^2 - a3 rho^2 + a1 = 0",
                                    [prm](double x0, double rho) {
                                        return 3.0 * prm.a3 * x0 * x0 - prm.a3 * rho * rho + prm.a1;
                                    }});
            return out;
        }
        case Example::Power: {
            const auto prm = std::get<PowerParams>(p);
            validate(prm);
            out.branches.push_back({"f1", "am1 (x0^2 + rho^2) + 2 am2 x0 = 0",
                                    [prm](double x0, double rho) {
                                        return prm.am1 * (x0 * x0 + rho * rho) + 2.0 * prm.am2 * x0;
                                    }});
            return out;
        }
        case Example::ExpPair: {
            const auto prm = std::get<ExpPairParams>(p);
            validate(prm);
            out.branches.push_back(
                {"f1", "e^{(b2-b1) x0} sin(b1 rho) - sin(b2 rho) = 0",
                 [prm](double x0, double rho) {
                     return std::exp((prm.b2 - prm.b1) * x0) * std::sin(prm.b1 * rho) -
                            std::sin(prm.b2 * rho);
                 }});
            return out;
        }
    }
    throw InvalidParams("unknown gallery example");
}

// E_rho e^{b2 x0}: the divergence branch with its denominators cleared.
inline double exp_pair_cleared_divergence(const ExpPairParams& p, double x0, double rho) {
    validate(p);
    return std::exp((p.b2 - p.b1) * x0) * std::sin(p.b1 * rho) - std::sin(p.b2 * rho);
}

// The inversive example's displayed eigenvalue formula drops the 2 A^2 rho^2
// cross term under the radical, so it matches the spectral route only where
// A = 0. paper_formula = true reproduces the display; the default delegates
// to the closed-form spectrum.
inline std::array<double, 3> mobius_char_roots(const MobiusParams& p, const MeridianPoint& q,
                                               bool paper_formula = false) {
    validate(p);
    if (!(q.rho > 0.0)) throw DomainError("mobius spectrum evaluated at rho <= 0");
    if (!paper_formula) return efg::char_roots(make_field(p), q, 1.0);
    const double A = q.x0 + p.d / p.c;
    const double D = A * A + q.rho * q.rho;
    const double c2 = p.c * p.c;
    const double lam0 = -1.0 / (c2 * D);
    const double A2 = A * A;
    const double p2 = q.rho * q.rho;
    const double s = std::sqrt(A2 * A2 + p2 * p2) / (c2 * D);
    return {lam0, s, -s};
}

// True when the displayed formula agrees with the spectral route at q.
inline bool mobius_printed_matches(const MobiusParams& p, const MeridianPoint& q,
                                   double rel_tol = 1e-9) {
    const auto printed = mobius_char_roots(p, q, true);
    const auto actual = mobius_char_roots(p, q, false);
    const double scale = std::fmax(std::fabs(actual[1]), std::fabs(actual[2]));
    return std::fabs(printed[1] - actual[1]) <= rel_tol * std::fmax(1.0, scale) &&
           std::fabs(printed[2] - actual[2]) <= rel_tol * std::fmax(1.0, scale);
}

}  // namespace meridian::gallery
