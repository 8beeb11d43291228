#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "meridian/axial.hpp"
#include "meridian/core.hpp"
#include "meridian/fd.hpp"
#include "meridian/grid.hpp"

namespace meridian {

// Every verifiable system. Scalar systems act on a potential, triple systems
// on (u0, u1, u2), pair systems on two functions of the (x0, second) chart.
enum class SystemId {
    Continuity,             // div(phi grad h) = 0, expanded
    SystemR,                // div-type + curl rows on (u0, u1, u2)
    GeneralModification,    // phi-weighted modification of SystemR
    SystemH,                // x2-weighted modification, unit zero-order term
    SystemA3,               // (x1^2+x2^2)-weighted modification
    Weinstein,              // x2 lap(h) - alpha dh/dx2 = 0
    HyperbolicMod,          // x2-weighted modification, alpha zero-order term
    CartEpd,                // x2 (g00 + g22) - alpha g2 = 0 on (x0, x2)
    VekuaCart,              // first-order factorization of CartEpd
    AxialEq,                // (x1^2+x2^2) lap(h) - alpha (x1 h1 + x2 h2) = 0
    AxialMod,               // matching first-order system
    CylEpd,                 // rho (g00 + grr) - (alpha-1) gr = 0 on (x0, rho)
    Bihyperbolic,           // lap(h) - (a1/x1) h1 - (a2/x2) h2 = 0
    BihyperbolicMod,        // matching first-order system, denominators cleared
    VekuaMerid,             // meridian-chart factorization of CylEpd
    MaxwellMerid,           // field form: rho (dE0 + dEr) - (alpha-1) Er = 0
    CrMerid,                // alpha = 1 case: plain Cauchy-Riemann in the chart
    StokesBeltrami,         // conjugate-pair system rho^(1-alpha) grad g = rot g^
    AnisotropicWeinstein,   // x2^(-a_kk)-weighted second-order equation
    AnisotropicSystem,      // matching first-order system
};

using ScalarField3 = std::function<double(const Vec3&)>;
using ScalarField2 = std::function<double(double, double)>;   // (x0, second)
using TripleField = std::function<Vec3(const Vec3&)>;
using PairField = std::function<AxialPair(double, double)>;   // (x0, second)

struct Candidate {
    std::variant<ScalarField3, ScalarField2, TripleField, PairField> fn;

    static Candidate scalar3(ScalarField3 f) { return {std::move(f)}; }
    static Candidate scalar2(ScalarField2 f) { return {std::move(f)}; }
    static Candidate triple(TripleField f) { return {std::move(f)}; }
    static Candidate pair(PairField f) { return {std::move(f)}; }
};

struct SystemParams {
    double alpha = 0.0;
    double alpha1 = 0.0, alpha2 = 0.0;        // bi-hyperbolic pair
    double a00 = 0.0, a11 = 0.0, a22 = 0.0;   // anisotropic exponents
    ScalarField3 phi;                         // conductivity-like coefficient
    TripleField grad_phi;                     // optional; FD fallback otherwise
};

// Residuals are reported in the quoted normalization of each system (leading
// coefficients kept, nothing divided out). The pointwise residual is the max
// over the system's equations; mean_abs averages that over evaluated points.
struct ResidualReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    Vec3 worst_point{0.0, 0.0, 0.0};
    std::size_t n_points = 0;
    std::size_t n_skipped = 0;
    double fd_step = 0.0;
};

namespace pde_detail {

enum class Arity { Scalar3, Scalar2, Triple, Pair };
enum class Domain { Full, RhoPos, X2Pos, X1X2Pos, SecondPos };

struct SystemTraits {
    Arity arity;
    Domain domain;
    bool second_order;  // scalar systems differentiate twice
};

inline SystemTraits traits(SystemId id) {
    switch (id) {
        case SystemId::Continuity: return {Arity::Scalar3, Domain::Full, true};
        case SystemId::SystemR: return {Arity::Triple, Domain::Full, false};
        case SystemId::GeneralModification: return {Arity::Triple, Domain::Full, false};
        case SystemId::SystemH: return {Arity::Triple, Domain::X2Pos, false};
        case SystemId::SystemA3: return {Arity::Triple, Domain::RhoPos, false};
        case SystemId::Weinstein: return {Arity::Scalar3, Domain::X2Pos, true};
        case SystemId::HyperbolicMod: return {Arity::Triple, Domain::X2Pos, false};
        case SystemId::CartEpd: return {Arity::Scalar2, Domain::SecondPos, true};
        case SystemId::VekuaCart: return {Arity::Pair, Domain::SecondPos, false};
        case SystemId::AxialEq: return {Arity::Scalar3, Domain::RhoPos, true};
        case SystemId::AxialMod: return {Arity::Triple, Domain::RhoPos, false};
        case SystemId::CylEpd: return {Arity::Scalar2, Domain::SecondPos, true};
        case SystemId::Bihyperbolic: return {Arity::Scalar3, Domain::X1X2Pos, true};
        case SystemId::BihyperbolicMod: return {Arity::Triple, Domain::X1X2Pos, false};
        case SystemId::VekuaMerid: return {Arity::Pair, Domain::SecondPos, false};
        case SystemId::MaxwellMerid: return {Arity::Pair, Domain::SecondPos, false};
        case SystemId::CrMerid: return {Arity::Pair, Domain::SecondPos, false};
        case SystemId::StokesBeltrami: return {Arity::Pair, Domain::SecondPos, false};
        case SystemId::AnisotropicWeinstein: return {Arity::Scalar3, Domain::X2Pos, true};
        case SystemId::AnisotropicSystem: return {Arity::Triple, Domain::X2Pos, false};
    }
    throw InvalidParams("unknown system id");
}

// Theta rings over the interval that keeps the system's domain constraints
// strict (off the x2=0 plane, or inside the first quadrant, as needed).
inline std::vector<double> ring_thetas(int K, Domain dom) {
    std::vector<double> thetas(static_cast<std::size_t>(K));
    constexpr double kMargin = 0.15;  // keeps lifted points off coordinate planes
    for (int k = 0; k < K; ++k) {
        const double u = (k + 0.5) / K;
        switch (dom) {
            case Domain::X2Pos:
                thetas[static_cast<std::size_t>(k)] = kMargin + (M_PI - 2 * kMargin) * u;
                break;
            case Domain::X1X2Pos:
                thetas[static_cast<std::size_t>(k)] = kMargin + (M_PI / 2 - 2 * kMargin) * u;
                break;
            default:
                thetas[static_cast<std::size_t>(k)] = 2 * M_PI * (k + 0.31) / K;
                break;
        }
    }
    return thetas;
}

// 3D sample points: cylindrical lift of the (x0, second=rho) grid.
inline std::vector<Vec3> lift_points(const GridSpec& g, Domain dom) {
    g.validate();
    const std::vector<double> thetas = ring_thetas(g.theta_rings, dom);
    if (dom != Domain::Full && !(g.second.lo > 0.0))
        throw DomainError("grid second axis must start strictly inside the domain");
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(g.x0.n * g.second.n) * thetas.size());
    for (int i = 0; i < g.x0.n; ++i)
        for (int j = 0; j < g.second.n; ++j)
            for (double t : thetas)
                pts.push_back({g.x0.at(i), g.second.at(j) * std::cos(t),
                               g.second.at(j) * std::sin(t)});
    return pts;
}

inline std::vector<AxialPair> chart_points(const GridSpec& g) {
    g.validate();
    if (!(g.second.lo > 0.0))
        throw DomainError("chart grids require second axis > 0");
    std::vector<AxialPair> pts;
    pts.reserve(static_cast<std::size_t>(g.x0.n * g.second.n));
    for (int i = 0; i < g.x0.n; ++i)
        for (int j = 0; j < g.second.n; ++j) pts.push_back({g.x0.at(i), g.second.at(j)});
    return pts;
}

// Distance from a point to the domain boundary (+inf-like when unconstrained).
inline double boundary_distance(const Vec3& p, Domain dom) {
    switch (dom) {
        case Domain::RhoPos: return std::hypot(p[1], p[2]);
        case Domain::X2Pos: return p[2];
        case Domain::X1X2Pos: return std::min(p[1], p[2]);
        default: return 1e300;
    }
}

struct Scalar3Derivs {
    double f;
    double g0, g1, g2;
    double s00, s11, s22;
};

inline Scalar3Derivs scalar3_derivs(const ScalarField3& h, const Vec3& p) {
    Scalar3Derivs d{};
    d.f = h(p);
    for (int a = 0; a < 3; ++a) {
        auto along = [&](double t) {
            Vec3 q = p;
            q[static_cast<std::size_t>(a)] = t;
            return h(q);
        };
        const double x = p[static_cast<std::size_t>(a)];
        const double g = fd::d1(along, x, fd::step1(x));
        const double s = fd::d2(along, x, fd::step2(x));
        (a == 0 ? d.g0 : a == 1 ? d.g1 : d.g2) = g;
        (a == 0 ? d.s00 : a == 1 ? d.s11 : d.s22) = s;
    }
    return d;
}

struct Scalar2Derivs {
    double f;
    double ga, gb;
    double saa, sbb;
};

inline Scalar2Derivs scalar2_derivs(const ScalarField2& g, double a, double b) {
    Scalar2Derivs d{};
    d.f = g(a, b);
    auto fa = [&](double t) { return g(t, b); };
    auto fb = [&](double t) { return g(a, t); };
    d.ga = fd::d1(fa, a, fd::step1(a));
    d.gb = fd::d1(fb, b, fd::step1(b));
    d.saa = fd::d2(fa, a, fd::step2(a));
    d.sbb = fd::d2(fb, b, fd::step2(b));
    return d;
}

struct TripleDerivs {
    Vec3 u;
    double j[3][3];  // j[component][axis]
};

inline TripleDerivs triple_derivs(const TripleField& u, const Vec3& p) {
    TripleDerivs d{};
    d.u = u(p);
    for (int a = 0; a < 3; ++a) {
        auto along = [&](double t) {
            Vec3 q = p;
            q[static_cast<std::size_t>(a)] = t;
            return u(q);
        };
        const double x = p[static_cast<std::size_t>(a)];
        const double h = fd::step1(x);
        auto comp = [&](int c) {
            return fd::d1([&](double t) { return along(t)[static_cast<std::size_t>(c)]; }, x,
                          h);
        };
        for (int c = 0; c < 3; ++c) d.j[c][a] = comp(c);
    }
    return d;
}

struct PairDerivs {
    AxialPair v;
    double e[2][2];  // e[component][axis], axes (x0, second)
};

inline PairDerivs pair_derivs(const PairField& v, double a, double b) {
    PairDerivs d{};
    d.v = v(a, b);
    auto d_axis = [&](int axis, int comp) {
        auto along = [&](double t) {
            const AxialPair w = axis == 0 ? v(t, b) : v(a, t);
            return comp == 0 ? w.u0 : w.urho;
        };
        const double x = axis == 0 ? a : b;
        return fd::d1(along, x, fd::step1(x));
    };
    for (int c = 0; c < 2; ++c)
        for (int ax = 0; ax < 2; ++ax) d.e[c][ax] = d_axis(ax, c);
    return d;
}

inline void phi_with_grad(const SystemParams& prm, const Vec3& p, double& phi, Vec3& grad) {
    if (!prm.phi) throw InvalidParams("this system needs the coefficient phi");
    phi = prm.phi(p);
    if (prm.grad_phi) {
        grad = prm.grad_phi(p);
        return;
    }
    for (int a = 0; a < 3; ++a) {
        auto along = [&](double t) {
            Vec3 q = p;
            q[static_cast<std::size_t>(a)] = t;
            return prm.phi(q);
        };
        const double x = p[static_cast<std::size_t>(a)];
        grad[static_cast<std::size_t>(a)] = fd::d1(along, x, fd::step1(x));
    }
}

inline void equations_scalar3(SystemId id, const SystemParams& prm, const Vec3& p,
                              const Scalar3Derivs& d, std::vector<double>& out) {
    const double lap = d.s00 + d.s11 + d.s22;
    switch (id) {
        case SystemId::Continuity: {
            double phi;
            Vec3 gphi{};
            phi_with_grad(prm, p, phi, gphi);
            out.push_back(phi * lap + gphi[0] * d.g0 + gphi[1] * d.g1 + gphi[2] * d.g2);
            return;
        }
        case SystemId::Weinstein:
            out.push_back(p[2] * lap - prm.alpha * d.g2);
            return;
        case SystemId::AxialEq: {
            const double rho2 = p[1] * p[1] + p[2] * p[2];
            out.push_back(rho2 * lap - prm.alpha * (p[1] * d.g1 + p[2] * d.g2));
            return;
        }
        case SystemId::Bihyperbolic:
            out.push_back(lap - (prm.alpha1 / p[1]) * d.g1 - (prm.alpha2 / p[2]) * d.g2);
            return;
        case SystemId::AnisotropicWeinstein:
            out.push_back(std::pow(p[2], -prm.a00) * d.s00 + std::pow(p[2], -prm.a11) * d.s11 +
                          std::pow(p[2], -prm.a22) * d.s22 -
                          prm.a22 * std::pow(p[2], -prm.a22 - 1.0) * d.g2);
            return;
        default: throw InvalidParams("not a 3-variable scalar system");
    }
}

inline void equations_scalar2(SystemId id, const SystemParams& prm, double /*a*/, double b,
                              const Scalar2Derivs& d, std::vector<double>& out) {
    switch (id) {
        case SystemId::CartEpd:
            out.push_back(b * (d.saa + d.sbb) - prm.alpha * d.gb);
            return;
        case SystemId::CylEpd:
            out.push_back(b * (d.saa + d.sbb) - (prm.alpha - 1.0) * d.gb);
            return;
        default: throw InvalidParams("not a 2-variable scalar system");
    }
}

inline void equations_triple(SystemId id, const SystemParams& prm, const Vec3& p,
                             const TripleDerivs& d, std::vector<double>& out) {
    const double div3 = d.j[0][0] - d.j[1][1] - d.j[2][2];
    const double c1 = d.j[0][1] + d.j[1][0];
    const double c2 = d.j[0][2] + d.j[2][0];
    const double c3 = d.j[1][2] - d.j[2][1];
    switch (id) {
        case SystemId::SystemR: out.push_back(div3); break;
        case SystemId::GeneralModification: {
            double phi;
            Vec3 gphi{};
            phi_with_grad(prm, p, phi, gphi);
            out.push_back(phi * div3 + gphi[0] * d.u[0] - gphi[1] * d.u[1] - gphi[2] * d.u[2]);
            break;
        }
        case SystemId::SystemH: out.push_back(p[2] * div3 + d.u[2]); break;
        case SystemId::HyperbolicMod: out.push_back(p[2] * div3 + prm.alpha * d.u[2]); break;
        case SystemId::SystemA3: {
            const double rho2 = p[1] * p[1] + p[2] * p[2];
            out.push_back(rho2 * div3 + (p[1] * d.u[1] + p[2] * d.u[2]));
            break;
        }
        case SystemId::AxialMod: {
            const double rho2 = p[1] * p[1] + p[2] * p[2];
            out.push_back(rho2 * div3 + prm.alpha * (p[1] * d.u[1] + p[2] * d.u[2]));
            break;
        }
        case SystemId::BihyperbolicMod:
            // Denominators x1, x2 cleared; equivalent on x1, x2 > 0.
            out.push_back(p[1] * p[2] * div3 + prm.alpha1 * p[2] * d.u[1] +
                          prm.alpha2 * p[1] * d.u[2]);
            break;
        case SystemId::AnisotropicSystem:
            out.push_back(std::pow(p[2], -prm.a00) * d.j[0][0] -
                          std::pow(p[2], -prm.a11) * d.j[1][1] -
                          std::pow(p[2], -prm.a22) * d.j[2][2] +
                          prm.a22 * std::pow(p[2], -prm.a22 - 1.0) * d.u[2]);
            break;
        default: throw InvalidParams("not a triple system");
    }
    out.push_back(c1);
    out.push_back(c2);
    out.push_back(c3);
}

inline void equations_pair(SystemId id, const SystemParams& prm, double /*a*/, double b,
                           const PairDerivs& d, std::vector<double>& out) {
    switch (id) {
        case SystemId::VekuaMerid:
            out.push_back(b * (d.e[0][0] - d.e[1][1]) + (prm.alpha - 1.0) * d.v.urho);
            out.push_back(d.e[0][1] + d.e[1][0]);
            return;
        case SystemId::MaxwellMerid:
            out.push_back(b * (d.e[0][0] + d.e[1][1]) - (prm.alpha - 1.0) * d.v.urho);
            out.push_back(d.e[0][1] - d.e[1][0]);
            return;
        case SystemId::CrMerid:
            out.push_back(d.e[0][0] - d.e[1][1]);
            out.push_back(d.e[0][1] + d.e[1][0]);
            return;
        case SystemId::VekuaCart:
            // Coefficient x2 (the factorization of CartEpd forces it).
            out.push_back(b * (d.e[0][0] - d.e[1][1]) + prm.alpha * d.v.urho);
            out.push_back(d.e[0][1] + d.e[1][0]);
            return;
        case SystemId::StokesBeltrami: {
            const double w = std::pow(b, 1.0 - prm.alpha);
            out.push_back(w * d.e[0][0] - d.e[1][1]);
            out.push_back(w * d.e[0][1] + d.e[1][0]);
            return;
        }
        default: throw InvalidParams("not a pair system");
    }
}

struct PointResult {
    double value = 0.0;
    bool skipped = false;
    Vec3 where{0.0, 0.0, 0.0};
};

// Max over equation rows; a non-finite row must survive the fold so the
// report stage can reject it (std::max would silently drop a NaN).
inline void fold_rows(PointResult& r, const std::vector<double>& eq) {
    for (double e : eq) {
        if (!std::isfinite(e)) {
            r.value = e;
            return;
        }
        r.value = std::max(r.value, std::fabs(e));
    }
}

}  // namespace pde_detail

namespace pde_detail {

inline ResidualReport residual_on(SystemId id, const Candidate& cand, const SystemParams& prm,
                                  const std::vector<Vec3>& pts3,
                                  const std::vector<AxialPair>& ptsc,
                                  std::vector<double>* pointwise = nullptr) {
    const SystemTraits tr = traits(id);

    auto step_for = [&](double coord) {
        return tr.second_order ? fd::step2(coord) : fd::step1(coord);
    };

    std::vector<PointResult> results;
    auto run = [&](auto&& eval_at, const auto& pts) {
        results.resize(pts.size());
        parallel_index(pts.size(), [&](std::size_t i) { results[i] = eval_at(pts[i]); });
    };

    switch (tr.arity) {
        case Arity::Scalar3: {
            const auto* h = std::get_if<ScalarField3>(&cand.fn);
            if (!h) throw ArityMismatch("system expects a scalar potential on R^3");
            const auto& pts = pts3;
            run(
                [&](const Vec3& p) {
                    PointResult r{0.0, false, p};
                    const double margin = 2.0 * step_for(std::max(
                                                   {std::fabs(p[0]), std::fabs(p[1]), std::fabs(p[2])}));
                    if (boundary_distance(p, tr.domain) < margin) {
                        r.skipped = true;
                        return r;
                    }
                    const auto d = scalar3_derivs(*h, p);
                    std::vector<double> eq;
                    equations_scalar3(id, prm, p, d, eq);
                    fold_rows(r, eq);
                    return r;
                },
                pts);
            break;
        }
        case Arity::Scalar2: {
            const auto* g = std::get_if<ScalarField2>(&cand.fn);
            if (!g) throw ArityMismatch("system expects a scalar potential on the chart");
            const auto& pts = ptsc;
            run(
                [&](const AxialPair& q) {
                    PointResult r{0.0, false, {q.u0, q.urho, 0.0}};
                    if (q.urho < 2.0 * step_for(q.urho)) {
                        r.skipped = true;
                        return r;
                    }
                    const auto d = scalar2_derivs(*g, q.u0, q.urho);
                    std::vector<double> eq;
                    equations_scalar2(id, prm, q.u0, q.urho, d, eq);
                    fold_rows(r, eq);
                    return r;
                },
                pts);
            break;
        }
        case Arity::Triple: {
            const auto* u = std::get_if<TripleField>(&cand.fn);
            if (!u) throw ArityMismatch("system expects a triple (u0, u1, u2)");
            const auto& pts = pts3;
            run(
                [&](const Vec3& p) {
                    PointResult r{0.0, false, p};
                    const double margin = 2.0 * step_for(std::max(
                                                   {std::fabs(p[0]), std::fabs(p[1]), std::fabs(p[2])}));
                    if (boundary_distance(p, tr.domain) < margin) {
                        r.skipped = true;
                        return r;
                    }
                    const auto d = triple_derivs(*u, p);
                    std::vector<double> eq;
                    equations_triple(id, prm, p, d, eq);
                    fold_rows(r, eq);
                    return r;
                },
                pts);
            break;
        }
        case Arity::Pair: {
            const auto* v = std::get_if<PairField>(&cand.fn);
            if (!v) throw ArityMismatch("system expects a chart pair");
            const auto& pts = ptsc;
            run(
                [&](const AxialPair& q) {
                    PointResult r{0.0, false, {q.u0, q.urho, 0.0}};
                    if (q.urho < 2.0 * step_for(q.urho)) {
                        r.skipped = true;
                        return r;
                    }
                    const auto d = pair_derivs(*v, q.u0, q.urho);
                    std::vector<double> eq;
                    equations_pair(id, prm, q.u0, q.urho, d, eq);
                    fold_rows(r, eq);
                    return r;
                },
                pts);
            break;
        }
    }

    if (pointwise) {
        pointwise->clear();
        pointwise->reserve(results.size());
        for (const auto& r : results)
            pointwise->push_back(r.skipped ? std::numeric_limits<double>::quiet_NaN() : r.value);
    }
    ResidualReport rep;
    double sum = 0.0;
    for (const auto& r : results) {
        if (r.skipped) {
            ++rep.n_skipped;
            continue;
        }
        if (!std::isfinite(r.value)) throw NonFiniteSample("non-finite residual on the grid");
        ++rep.n_points;
        sum += r.value;
        if (r.value >= rep.max_abs) {
            rep.max_abs = r.value;
            rep.worst_point = r.where;
        }
    }
    if (rep.n_points == 0) throw InvalidParams("no grid points survive the boundary margin");
    rep.mean_abs = sum / static_cast<double>(rep.n_points);
    rep.fd_step = tr.second_order ? fd::step2(1.0) : fd::step1(1.0);
    return rep;
}

}  // namespace pde_detail

// Evaluates every equation of `id` on the grid and reports the residual in
// the system's own normalization. Points nearer than twice the relevant FD
// step to a domain boundary are skipped and counted.
inline ResidualReport residual(SystemId id, const Candidate& cand, const SystemParams& prm,
                               const GridSpec& grid) {
    using namespace pde_detail;
    const SystemTraits tr = traits(id);
    std::vector<Vec3> pts3;
    std::vector<AxialPair> ptsc;
    if (tr.arity == Arity::Scalar3 || tr.arity == Arity::Triple)
        pts3 = lift_points(grid, tr.domain);
    else
        ptsc = chart_points(grid);
    return residual_on(id, cand, prm, pts3, ptsc);
}

// What shape of candidate `id` expects: a scalar or triple over R^3, or a
// scalar or pair over the (x0, second) chart.
enum class SystemForm { ScalarVolume, ScalarChart, TripleVolume, PairChart };

inline SystemForm system_form(SystemId id) {
    switch (pde_detail::traits(id).arity) {
        case pde_detail::Arity::Scalar3: return SystemForm::ScalarVolume;
        case pde_detail::Arity::Scalar2: return SystemForm::ScalarChart;
        case pde_detail::Arity::Triple: return SystemForm::TripleVolume;
        case pde_detail::Arity::Pair: return SystemForm::PairChart;
    }
    throw InvalidParams("unknown system id");
}

// Whether `id` evaluates on R^3 (lifted points, theta matters) or on the
// meridian chart (theta ignored).
inline bool system_is_lifted(SystemId id) {
    const auto f = system_form(id);
    return f == SystemForm::ScalarVolume || f == SystemForm::TripleVolume;
}

// The grid's sample points as (x0, rho, theta) triples, in evaluation order.
// Embedding these reproduces the lifted points of `residual` exactly, so a
// CSV export of this list round-trips to the same report.
inline std::vector<MeridianPoint> grid_meridian_points(SystemId id, const GridSpec& g) {
    using namespace pde_detail;
    g.validate();
    std::vector<MeridianPoint> pts;
    if (system_is_lifted(id)) {
        const std::vector<double> thetas = ring_thetas(g.theta_rings, traits(id).domain);
        pts.reserve(static_cast<std::size_t>(g.x0.n * g.second.n) * thetas.size());
        for (int i = 0; i < g.x0.n; ++i)
            for (int j = 0; j < g.second.n; ++j)
                for (double t : thetas) pts.push_back({g.x0.at(i), g.second.at(j), t});
    } else {
        pts.reserve(static_cast<std::size_t>(g.x0.n * g.second.n));
        for (int i = 0; i < g.x0.n; ++i)
            for (int j = 0; j < g.second.n; ++j) pts.push_back({g.x0.at(i), g.second.at(j), 0.0});
    }
    return pts;
}

// Same evaluation on explicit meridian points (x0, rho, theta): R^3 systems
// embed them, chart systems drop theta. Re-checking an exported grid this way
// reproduces the grid report bit for bit.
inline ResidualReport residual(SystemId id, const Candidate& cand, const SystemParams& prm,
                               const std::vector<MeridianPoint>& points) {
    using namespace pde_detail;
    const SystemTraits tr = traits(id);
    std::vector<Vec3> pts3;
    std::vector<AxialPair> ptsc;
    if (tr.arity == Arity::Scalar3 || tr.arity == Arity::Triple) {
        pts3.reserve(points.size());
        for (const auto& p : points) {
            const ReducedQuaternion q = p.embed();
            pts3.push_back({q.x0, q.x1, q.x2});
        }
    } else {
        ptsc.reserve(points.size());
        for (const auto& p : points) ptsc.push_back({p.x0, p.rho});
    }
    return residual_on(id, cand, prm, pts3, ptsc);
}

// Per-point max-abs equation residuals, NaN where the boundary margin skipped
// the point. Same order as `points`.
inline std::vector<double> pointwise_residuals(SystemId id, const Candidate& cand,
                                               const SystemParams& prm,
                                               const std::vector<MeridianPoint>& points) {
    using namespace pde_detail;
    const SystemTraits tr = traits(id);
    std::vector<Vec3> pts3;
    std::vector<AxialPair> ptsc;
    if (system_is_lifted(id)) {
        pts3.reserve(points.size());
        for (const auto& p : points) {
            const ReducedQuaternion q = p.embed();
            pts3.push_back({q.x0, q.x1, q.x2});
        }
    } else {
        ptsc.reserve(points.size());
        for (const auto& p : points) ptsc.push_back({p.x0, p.rho});
    }
    std::vector<double> vals;
    residual_on(id, cand, prm, pts3, ptsc, &vals);
    return vals;
}

inline const char* system_name(SystemId id) {
    switch (id) {
        case SystemId::Continuity: return "continuity";
        case SystemId::SystemR: return "system_r";
        case SystemId::GeneralModification: return "general_modification";
        case SystemId::SystemH: return "system_h";
        case SystemId::SystemA3: return "system_a3";
        case SystemId::Weinstein: return "weinstein";
        case SystemId::HyperbolicMod: return "hyperbolic_mod";
        case SystemId::CartEpd: return "cart_epd";
        case SystemId::VekuaCart: return "vekua_cart";
        case SystemId::AxialEq: return "axial_eq";
        case SystemId::AxialMod: return "axial_mod";
        case SystemId::CylEpd: return "cyl_epd";
        case SystemId::Bihyperbolic: return "bihyperbolic";
        case SystemId::BihyperbolicMod: return "bihyperbolic_mod";
        case SystemId::VekuaMerid: return "vekua_merid";
        case SystemId::MaxwellMerid: return "maxwell_merid";
        case SystemId::CrMerid: return "cr_merid";
        case SystemId::StokesBeltrami: return "stokes_beltrami";
        case SystemId::AnisotropicWeinstein: return "anisotropic_weinstein";
        case SystemId::AnisotropicSystem: return "anisotropic_system";
    }
    return "unknown";
}

inline SystemId system_from_name(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(SystemId::AnisotropicSystem); ++i) {
        const auto id = static_cast<SystemId>(i);
        if (s == system_name(id)) return id;
    }
    throw InvalidParams("unknown system name: " + s);
}

// Meridional criteria: a potential is axially symmetric iff both vanish.
struct MeridionalReport {
    ResidualReport cartesian;  // max |x2 dh/dx1 - x1 dh/dx2|
    ResidualReport azimuthal;  // max |dh/dtheta| from rotated samples
};

inline MeridionalReport criterion_meridional(const ScalarField3& h, const GridSpec& grid) {
    using namespace pde_detail;
    const auto pts = lift_points(grid, Domain::RhoPos);
    MeridionalReport rep;
    std::vector<std::array<double, 2>> vals(pts.size());
    parallel_index(pts.size(), [&](std::size_t i) {
        const Vec3 p = pts[i];
        auto d_axis = [&](int a) {
            auto along = [&](double t) {
                Vec3 q = p;
                q[static_cast<std::size_t>(a)] = t;
                return h(q);
            };
            const double x = p[static_cast<std::size_t>(a)];
            return fd::d1(along, x, fd::step1(x));
        };
        const double cart = p[2] * d_axis(1) - p[1] * d_axis(2);
        const double rho = std::hypot(p[1], p[2]);
        const double theta = std::atan2(p[2], p[1]);
        auto rotated = [&](double t) {
            return h({p[0], rho * std::cos(theta + t), rho * std::sin(theta + t)});
        };
        const double azim = fd::d1(rotated, 0.0, fd::step1(1.0));
        vals[i] = {cart, azim};
    });
    auto fold = [&](int which, ResidualReport& out) {
        double sum = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double v = std::fabs(vals[i][static_cast<std::size_t>(which)]);
            if (!std::isfinite(v)) throw NonFiniteSample("non-finite meridional residual");
            sum += v;
            if (v >= out.max_abs) {
                out.max_abs = v;
                out.worst_point = pts[i];
            }
            ++out.n_points;
        }
        out.mean_abs = out.n_points ? sum / static_cast<double>(out.n_points) : 0.0;
        out.fd_step = fd::step1(1.0);
    };
    fold(0, rep.cartesian);
    fold(1, rep.azimuthal);
    return rep;
}

// Equivalence check between the bi-hyperbolic equation with pair (a1, a2) and
// the single-exponent equation with a1 + a2: under the meridional condition
// x2 h_x1 = x1 h_x2 the two residuals obey x2 * r_bi = r_single pointwise;
// identity_gap reports the worst violation of that proportionality.
struct BihyperbolicReport {
    ResidualReport condition;
    ResidualReport bihyperbolic;
    ResidualReport weinstein;
    double identity_gap = 0.0;
};

inline BihyperbolicReport criterion_bihyperbolic(const ScalarField3& h, double alpha1,
                                                 double alpha2, const GridSpec& grid) {
    using namespace pde_detail;
    const auto pts = lift_points(grid, Domain::X1X2Pos);
    BihyperbolicReport rep;
    struct Row {
        double cond, rbi, rw;
        bool skipped;
    };
    std::vector<Row> rows(pts.size());
    parallel_index(pts.size(), [&](std::size_t i) {
        const Vec3& p = pts[i];
        const double margin =
            2.0 * fd::step2(std::max({std::fabs(p[0]), std::fabs(p[1]), std::fabs(p[2])}));
        if (boundary_distance(p, Domain::X1X2Pos) < margin) {
            rows[i] = {0.0, 0.0, 0.0, true};
            return;
        }
        const auto d = scalar3_derivs(h, p);
        const double lap = d.s00 + d.s11 + d.s22;
        rows[i].cond = p[2] * d.g1 - p[1] * d.g2;
        rows[i].rbi = lap - (alpha1 / p[1]) * d.g1 - (alpha2 / p[2]) * d.g2;
        rows[i].rw = p[2] * lap - (alpha1 + alpha2) * d.g2;
        rows[i].skipped = false;
    });
    double sc = 0.0, sb = 0.0, sw = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (rows[i].skipped) {
            ++rep.condition.n_skipped;
            ++rep.bihyperbolic.n_skipped;
            ++rep.weinstein.n_skipped;
            continue;
        }
        auto upd = [&](ResidualReport& r, double v, double& sum) {
            const double a = std::fabs(v);
            if (!std::isfinite(a)) throw NonFiniteSample("non-finite equivalence residual");
            sum += a;
            if (a >= r.max_abs) {
                r.max_abs = a;
                r.worst_point = pts[i];
            }
            ++r.n_points;
        };
        upd(rep.condition, rows[i].cond, sc);
        upd(rep.bihyperbolic, rows[i].rbi, sb);
        upd(rep.weinstein, rows[i].rw, sw);
        rep.identity_gap =
            std::max(rep.identity_gap, std::fabs(pts[i][2] * rows[i].rbi - rows[i].rw));
    }
    if (rep.condition.n_points == 0)
        throw InvalidParams("no grid points survive the boundary margin");
    rep.condition.mean_abs = sc / static_cast<double>(rep.condition.n_points);
    rep.bihyperbolic.mean_abs = sb / static_cast<double>(rep.bihyperbolic.n_points);
    rep.weinstein.mean_abs = sw / static_cast<double>(rep.weinstein.n_points);
    const double step = fd::step2(1.0);
    rep.condition.fd_step = rep.bihyperbolic.fd_step = rep.weinstein.fd_step = step;
    return rep;
}

// Sturm-Liouville factor check: s(x1) solving s'' - (a1/x1) s' + lambda^2 s = 0
// must, under x1 = y^(1/(a1+1)), satisfy the normal form
// s~'' + (lambda^2/(a1+1)^2) y^(-2 a1/(a1+1)) s~ = 0.
struct EmdenFowlerReport {
    ResidualReport original;
    ResidualReport transformed;
};

inline EmdenFowlerReport emden_fowler_check(double alpha1, int lambda,
                                            const std::function<double(double)>& s,
                                            const Axis& x1_axis) {
    if (alpha1 == -1.0) throw InvalidParams("alpha1 = -1 degenerates the substitution");
    x1_axis.validate("x1");
    if (!(x1_axis.lo > 0.0)) throw DomainError("samples must lie on x1 > 0");
    EmdenFowlerReport rep;
    const double l2 = static_cast<double>(lambda) * lambda;
    const double p1 = alpha1 + 1.0;
    auto st = [&](double y) { return s(std::pow(y, 1.0 / p1)); };
    auto fold = [&](ResidualReport& out, auto&& res, double coord) {
        const double v = std::fabs(res);
        if (!std::isfinite(v)) throw NonFiniteSample("non-finite ODE residual");
        ++out.n_points;
        out.mean_abs += v;
        if (v >= out.max_abs) {
            out.max_abs = v;
            out.worst_point = {coord, 0.0, 0.0};
        }
    };
    for (int i = 0; i < x1_axis.n; ++i) {
        const double x = x1_axis.at(i);
        if (x < 2.0 * fd::step2(x)) {
            ++rep.original.n_skipped;
            ++rep.transformed.n_skipped;
            continue;
        }
        const double d1 = fd::d1(s, x, fd::step1(x));
        const double d2 = fd::d2(s, x, fd::step2(x));
        fold(rep.original, d2 - (alpha1 / x) * d1 + l2 * s(x), x);
        const double y = std::pow(x, p1);
        const double td2 = fd::d2(st, y, fd::step2(y));
        fold(rep.transformed, td2 + (l2 / (p1 * p1)) * std::pow(y, -2.0 * alpha1 / p1) * st(y),
             y);
    }
    if (rep.original.n_points == 0) throw InvalidParams("no usable x1 samples");
    rep.original.mean_abs /= static_cast<double>(rep.original.n_points);
    rep.transformed.mean_abs /= static_cast<double>(rep.transformed.n_points);
    rep.original.fd_step = rep.transformed.fd_step = fd::step2(1.0);
    return rep;
}

// Weight-shift check: g = rho^k w with k = (alpha +/- sqrt(alpha^2+4 lambda^2))/2
// turns the azimuthally separated equation for g into a pure EPD-type equation
// for w; both residuals are reported on the same chart grid.
struct EpdTransformReport {
    ResidualReport separated;    // g00 + grr - ((alpha-1)/rho) gr - (lambda^2/rho^2) g
    ResidualReport transformed;  // rho (w00 + wrr) + (1 +/- sqrt(...)) wr
    double exponent = 0.0;
};

inline EpdTransformReport epd_transform_check(double alpha, int lambda,
                                              const ScalarField2& w, bool plus_branch,
                                              const GridSpec& grid) {
    using namespace pde_detail;
    const double root = std::sqrt(alpha * alpha + 4.0 * lambda * lambda);
    const double k = 0.5 * (alpha + (plus_branch ? root : -root));
    EpdTransformReport rep;
    rep.exponent = k;
    const double l2 = static_cast<double>(lambda) * lambda;
    ScalarField2 g = [&, k](double a, double b) { return std::pow(b, k) * w(a, b); };
    const auto pts = chart_points(grid);
    double ss = 0.0, stf = 0.0;
    for (const auto& q : pts) {
        if (q.urho < 2.0 * fd::step2(q.urho)) {
            ++rep.separated.n_skipped;
            ++rep.transformed.n_skipped;
            continue;
        }
        const auto dg = scalar2_derivs(g, q.u0, q.urho);
        const auto dw = scalar2_derivs(w, q.u0, q.urho);
        const double rs = dg.saa + dg.sbb - ((alpha - 1.0) / q.urho) * dg.gb -
                          (l2 / (q.urho * q.urho)) * dg.f;
        const double rt = q.urho * (dw.saa + dw.sbb) + (1.0 + (plus_branch ? root : -root)) * dw.gb;
        auto upd = [&](ResidualReport& r, double v, double& sum) {
            const double a = std::fabs(v);
            if (!std::isfinite(a)) throw NonFiniteSample("non-finite transform residual");
            sum += a;
            ++r.n_points;
            if (a >= r.max_abs) {
                r.max_abs = a;
                r.worst_point = {q.u0, q.urho, 0.0};
            }
        };
        upd(rep.separated, rs, ss);
        upd(rep.transformed, rt, stf);
    }
    if (rep.separated.n_points == 0) throw InvalidParams("no usable chart points");
    rep.separated.mean_abs = ss / static_cast<double>(rep.separated.n_points);
    rep.transformed.mean_abs = stf / static_cast<double>(rep.transformed.n_points);
    rep.separated.fd_step = rep.transformed.fd_step = fd::step2(1.0);
    return rep;
}

}  // namespace meridian
