#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "meridian/rng.hpp"
#include "meridian/rq.hpp"

using namespace meridian;
using Catch::Matchers::WithinAbs;

namespace {

// Upper-half-plane sample away from the axis and the origin.
MeridianPoint draw_point(SplitRng& rng) {
    return {rng.uniform(-2.0, 2.0), rng.uniform(0.3, 2.5)};
}

ChartFn chart_pow(int n) {
    return [n](const MeridianPoint& p) { return pow_chart({p.x0, p.rho}, n); };
}

const ChartFn chart_exp = [](const MeridianPoint& p) { return exp_chart({p.x0, p.rho}); };

}  // namespace

TEST_CASE("chart decomposition and embedding round trip", "[rq]") {
    const ReducedQuaternion x{1.0, 2.0, -2.0};
    const auto d = decompose(x);
    CHECK_THAT(d.rho, WithinAbs(std::sqrt(8.0), 1e-15));
    CHECK_THAT(d.r, WithinAbs(3.0, 1e-15));
    CHECK_THAT(d.phi, WithinAbs(std::acos(1.0 / 3.0), 1e-15));

    const MeridianPoint p{x.x0, d.rho, d.theta};
    const ReducedQuaternion back = p.embed();
    CHECK_THAT(back.x0, WithinAbs(x.x0, 1e-14));
    CHECK_THAT(back.x1, WithinAbs(x.x1, 1e-14));
    CHECK_THAT(back.x2, WithinAbs(x.x2, 1e-14));

    CHECK_THROWS_AS(decompose({0.0, 0.0, 0.0}), ZeroPoint);
    CHECK_THROWS_AS(decompose({1.0, 0.0, 0.0}), DegenerateAxis);
}

TEST_CASE("integer powers follow the polar form", "[rq]") {
    const ReducedQuaternion x{1.0, 1.0, 0.0};
    const ReducedQuaternion sq = rq_pow(x, 2);
    CHECK_THAT(sq.x0, WithinAbs(0.0, 1e-14));
    CHECK_THAT(sq.x1, WithinAbs(2.0, 1e-14));
    CHECK_THAT(sq.x2, WithinAbs(0.0, 1e-14));

    const ReducedQuaternion inv = rq_pow(x, -1);
    CHECK_THAT(inv.x0, WithinAbs(0.5, 1e-15));
    CHECK_THAT(inv.x1, WithinAbs(-0.5, 1e-15));

    // Off the plane: power stays on the meridian of x.
    const ReducedQuaternion y{0.5, 0.6, 0.8};
    const ReducedQuaternion y2 = rq_pow(y, 2);
    CHECK_THAT(y2.x1 * y.x2 - y2.x2 * y.x1, WithinAbs(0.0, 1e-14));

    // Chart cross-check: x^3 equals repeated chart multiplication.
    SplitRng rng(2024);
    for (int i = 0; i < 50; ++i) {
        const MeridianPoint p = draw_point(rng);
        const AxialPair z{p.x0, p.rho};
        const AxialPair via_mul = z * z * z;
        const AxialPair via_pow = pow_chart(z, 3);
        CHECK_THAT(via_pow.u0, WithinAbs(via_mul.u0, 1e-11));
        CHECK_THAT(via_pow.urho, WithinAbs(via_mul.urho, 1e-11));
    }

    CHECK_THROWS_AS(rq_pow({1.0, 0.0, 0.0}, 2), DegenerateAxis);
}

TEST_CASE("elementary functions at pinned arguments", "[rq]") {
    const ReducedQuaternion x{1.0, 1.0, 0.0};

    const ReducedQuaternion ex = rq_elementary(Elementary::Exp, x);
    CHECK_THAT(ex.x0, WithinAbs(1.4686939399158851, 1e-14));
    CHECK_THAT(ex.x1, WithinAbs(2.2873552871788423, 1e-14));
    CHECK_THAT(ex.x2, WithinAbs(0.0, 1e-14));

    // exp(I pi) = -1 along the j meridian.
    const ReducedQuaternion epi = rq_elementary(Elementary::Exp, {0.0, 0.0, M_PI});
    CHECK_THAT(epi.x0, WithinAbs(-1.0, 1e-14));
    CHECK_THAT(epi.x2, WithinAbs(0.0, 1e-14));

    const ReducedQuaternion lx = rq_elementary(Elementary::Ln, x);
    CHECK_THAT(lx.x0, WithinAbs(0.3465735902799727, 1e-14));
    CHECK_THAT(lx.x1, WithinAbs(0.7853981633974483, 1e-14));

    const ReducedQuaternion ci = rq_elementary(Elementary::Cos, {0.0, 1.0, 0.0});
    CHECK_THAT(ci.x0, WithinAbs(1.5430806348152437, 1e-14));
    CHECK_THAT(ci.x1, WithinAbs(0.0, 1e-14));

    const ReducedQuaternion si = rq_elementary(Elementary::Sin, {0.0, 1.0, 0.0});
    CHECK_THAT(si.x0, WithinAbs(0.0, 1e-14));
    CHECK_THAT(si.x1, WithinAbs(1.1752011936438014, 1e-14));

    const ReducedQuaternion cj = rq_elementary(Elementary::Conj, x);
    CHECK(cj.x1 == -1.0);
}

TEST_CASE("exp and ln invert each other off the axis", "[rq]") {
    SplitRng rng(77);
    for (int i = 0; i < 100; ++i) {
        const MeridianPoint p = draw_point(rng);
        const ReducedQuaternion x = p.embed();
        const ReducedQuaternion back =
            rq_elementary(Elementary::Exp, rq_elementary(Elementary::Ln, x));
        CHECK_THAT(back.x0, WithinAbs(x.x0, 1e-12));
        CHECK_THAT(back.x1, WithinAbs(x.x1, 1e-12));
        CHECK_THAT(back.x2, WithinAbs(x.x2, 1e-12));
    }
}

TEST_CASE("chart trig obeys the Pythagorean identity", "[rq]") {
    SplitRng rng(78);
    for (int i = 0; i < 100; ++i) {
        const MeridianPoint p = draw_point(rng);
        const AxialPair z{p.x0, p.rho};
        const AxialPair s = sin_chart(z);
        const AxialPair c = cos_chart(z);
        const AxialPair one = s * s + c * c;
        CHECK_THAT(one.u0, WithinAbs(1.0, 1e-12));
        CHECK_THAT(one.urho, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("radial derivative reproduces the derivative table", "[rq]") {
    SplitRng rng(101);
    for (int i = 0; i < 100; ++i) {
        const MeridianPoint p = draw_point(rng);
        const AxialPair z{p.x0, p.rho};

        const AxialPair dpow = radial_derivative(chart_pow(3), p);
        const AxialPair dpow_ref = pow_chart(z, 2) * 3.0;
        CHECK_THAT(dpow.u0, WithinAbs(dpow_ref.u0, 1e-7));
        CHECK_THAT(dpow.urho, WithinAbs(dpow_ref.urho, 1e-7));

        const AxialPair dexp = radial_derivative(chart_exp, p);
        const AxialPair dexp_ref = exp_chart(z);
        CHECK_THAT(dexp.u0, WithinAbs(dexp_ref.u0, 1e-7));
        CHECK_THAT(dexp.urho, WithinAbs(dexp_ref.urho, 1e-7));

        const AxialPair dln = radial_derivative(
            [](const MeridianPoint& q) { return ln_chart({q.x0, q.rho}); }, p);
        const AxialPair dln_ref = z.inverse();
        CHECK_THAT(dln.u0, WithinAbs(dln_ref.u0, 1e-7));
        CHECK_THAT(dln.urho, WithinAbs(dln_ref.urho, 1e-7));

        const AxialPair dcos = radial_derivative(
            [](const MeridianPoint& q) { return cos_chart({q.x0, q.rho}); }, p);
        const AxialPair dcos_ref = -sin_chart(z);
        CHECK_THAT(dcos.u0, WithinAbs(dcos_ref.u0, 1e-7));
        CHECK_THAT(dcos.urho, WithinAbs(dcos_ref.urho, 1e-7));

        const AxialPair dsin = radial_derivative(
            [](const MeridianPoint& q) { return sin_chart({q.x0, q.rho}); }, p);
        const AxialPair dsin_ref = cos_chart(z);
        CHECK_THAT(dsin.u0, WithinAbs(dsin_ref.u0, 1e-7));
        CHECK_THAT(dsin.urho, WithinAbs(dsin_ref.urho, 1e-7));
    }
}

TEST_CASE("CR residual separates holomorphic from conjugate", "[rq]") {
    SplitRng rng(55);
    for (int i = 0; i < 50; ++i) {
        const MeridianPoint p = draw_point(rng);
        CHECK(cr_residual(chart_pow(2), p) < 1e-8);
        CHECK(cr_residual(chart_exp, p) < 1e-8);
    }
    // F(x) = conj(x): the CR operator returns 1 exactly.
    const ChartFn conj_fn = [](const MeridianPoint& p) { return AxialPair{p.x0, -p.rho}; };
    CHECK_THAT(cr_residual(conj_fn, {0.7, 1.1}), WithinAbs(1.0, 1e-9));
}

TEST_CASE("line integral of x over a horizontal segment", "[rq]") {
    const ChartFn ident = [](const MeridianPoint& p) { return AxialPair{p.x0, p.rho}; };
    PolylinePath seg({{1.0, 1.0}, {2.0, 1.0}});
    const AxialPair val = line_integral(ident, seg);
    // Primitive x^2/2: ((2+I)^2 - (1+I)^2)/2 = (3 + 2 I) / 2.
    CHECK_THAT(val.u0, WithinAbs(1.5, 1e-13));
    CHECK_THAT(val.urho, WithinAbs(1.0, 1e-13));
}

TEST_CASE("holomorphic integrals are path independent", "[rq]") {
    SplitRng rng(303);
    for (int i = 0; i < 20; ++i) {
        const MeridianPoint a = draw_point(rng);
        const MeridianPoint b = draw_point(rng);
        const double via_rho = rng.uniform(0.3, 2.5);
        PolylinePath direct({{a.x0, a.rho}, {b.x0, b.rho}});
        PolylinePath dogleg({{a.x0, a.rho}, {a.x0, via_rho}, {b.x0, via_rho}, {b.x0, b.rho}});
        const AxialPair v1 = line_integral(chart_exp, direct);
        const AxialPair v2 = line_integral(chart_exp, dogleg);
        CHECK_THAT(v1.u0, WithinAbs(v2.u0, 1e-10));
        CHECK_THAT(v1.urho, WithinAbs(v2.urho, 1e-10));
    }

    // Closed rectangle: the loop integral vanishes.
    PolylinePath loop({{0.0, 0.5}, {1.0, 0.5}, {1.0, 1.5}, {0.0, 1.5}, {0.0, 0.5}});
    const AxialPair z = line_integral(chart_exp, loop);
    CHECK_THAT(z.u0, WithinAbs(0.0, 1e-12));
    CHECK_THAT(z.urho, WithinAbs(0.0, 1e-12));
}

TEST_CASE("primitive inverts the radial derivative", "[rq]") {
    const MeridianPoint base{0.0, 1.0};
    const auto G = primitive(chart_exp, base, exp_chart({0.0, 1.0}));
    SplitRng rng(404);
    for (int i = 0; i < 25; ++i) {
        const MeridianPoint p = draw_point(rng);
        const AxialPair want = exp_chart({p.x0, p.rho});
        const AxialPair got = G(p);
        CHECK_THAT(got.u0, WithinAbs(want.u0, 1e-10));
        CHECK_THAT(got.urho, WithinAbs(want.urho, 1e-10));

        const AxialPair back = radial_derivative(G, p);
        CHECK_THAT(back.u0, WithinAbs(want.u0, 1e-6));
        CHECK_THAT(back.urho, WithinAbs(want.urho, 1e-6));
    }
}

TEST_CASE("polyline validation", "[rq]") {
    CHECK_THROWS_AS(PolylinePath({{0.0, 1.0}}), EmptyPath);
    CHECK_THROWS_AS(PolylinePath({{0.0, 1.0}, {1.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(PolylinePath({{0.0, 1.0}, {0.0, 1.0}}), DomainError);
}
