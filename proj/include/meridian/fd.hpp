#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace meridian::fd {

// Step scales for the 4th-order stencils below. First order balances
// truncation h^4 |f^(5)|/30 against round-off ~3 eps |f|/h at eps^(1/5).
// Second order balances truncation (h/2)^4 |f^(6)|/90 against round-off
// ~5 eps |f| (h/2)^-2; 5 eps^(1/6) holds the floor near 5e-11 for the
// unit-scale payloads whose analytically-zero residuals must verify below
// 1e-10, while steep Bessel profiles stay inside the 1e-6 tolerances.
inline double step1(double coord) {
    static const double c = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 5.0);
    return c * std::fmax(1.0, std::fabs(coord));
}

inline double step2(double coord) {
    static const double c =
        5.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / 6.0);
    return c * std::fmax(1.0, std::fabs(coord));
}

namespace detail {

// Fornberg recursion (Math. Comp. 51, 1988): weights of the m-th derivative
// at 0 for the given nodes, orders up to m = 2, n <= 8 nodes.
template <class R>
inline void deriv_weights(const R* z, int n, int m, R* w) {
    R C[8][3] = {};
    C[0][0] = R(1);
    R c1 = R(1);
    R c4 = z[0];
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        R c2 = R(1);
        const R c5 = c4;
        c4 = z[i];
        for (int j = 0; j < i; ++j) {
            const R c3 = z[i] - z[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C[i][k] = c1 * (R(k) * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
                C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) C[j][k] = (c4 * C[j][k] - R(k) * C[j][k - 1]) / c3;
            C[j][0] = c4 * C[j][0] / c3;
        }
        c1 = c2;
    }
    for (int i = 0; i < n; ++i) w[i] = C[i][m];
}

}  // namespace detail

// d/dx f at x; T needs +, -, * double.
template <class F>
auto d1(F&& f, double x, double h) {
    auto once = [&](double s) { return (f(x + s) - f(x - s)) * (0.5 / s); };
    auto coarse = once(h);
    auto fine = once(0.5 * h);
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

// d^2/dx^2 f at x. The abscissae are the representable doubles nearest
// x + {-h, -h/2, 0, h/2, h} and the quartic-exact weights are solved in
// extended precision for the offsets actually realized: nominal uniform
// weights would feed f' * eps * |x| argument noise into the second
// difference and swamp analytically-zero residuals.
template <class F>
double d2(F&& f, double x, double h) {
    const double a = 0.5 * h;
    const double node[5] = {x - 2.0 * a, x - a, x, x + a, x + 2.0 * a};
    long double z[5], w[5];
    for (int i = 0; i < 5; ++i)
        z[i] = static_cast<long double>(node[i]) - static_cast<long double>(x);
    detail::deriv_weights(z, 5, 2, w);
    // Pin the zeroth moment: a residual eps-scale defect multiplies the
    // payload's constant component through the 1/a^2 weight magnitudes.
    w[2] = -(w[0] + w[1] + w[3] + w[4]);
    long double acc = 0.0L;
    for (int i = 0; i < 5; ++i) acc += w[i] * static_cast<long double>(f(node[i]));
    return static_cast<double>(acc);
}

// d^2/(dx dy) f at (x, y); f is a callable of two coordinates.
template <class F>
auto dmixed(F&& f, double x, double y, double hx, double hy) {
    auto once = [&](double sx, double sy) {
        return (f(x + sx, y + sy) - f(x + sx, y - sy) - f(x - sx, y + sy) +
                f(x - sx, y - sy)) *
               (0.25 / (sx * sy));
    };
    auto coarse = once(hx, hy);
    auto fine = once(0.5 * hx, 0.5 * hy);
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

}  // namespace meridian::fd
