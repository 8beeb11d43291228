#pragma once

#include <cmath>
#include <functional>
#include <type_traits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "meridian/errors.hpp"

namespace meridian::quad {

// Composite fixed-order 16-point Gauss-Legendre over [0, 1]; T needs +=, * double.
template <class F>
auto gauss16_unit(F&& f, int panels) {
    using boost::math::quadrature::gauss;
    const auto& xs = gauss<double, 16>::abscissa();  // positive half-nodes
    const auto& ws = gauss<double, 16>::weights();
    using T = std::decay_t<decltype(f(0.5))>;
    T total{};
    const double width = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        T acc{};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double dx = 0.5 * width * xs[i];
            acc += (f(mid + dx) + f(mid - dx)) * ws[i];
        }
        total += acc * (0.5 * width);
    }
    return total;
}

// Adaptive 15-point Gauss-Kronrod on a finite interval. The returned estimate
// must meet abs_tol + 1e-10 * |value|, else QuadratureFailure.
inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    const double v = gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-12, &err);
    if (!std::isfinite(v)) throw QuadratureFailure("non-finite integral value");
    if (err > abs_tol + 1e-10 * std::fabs(v))
        throw QuadratureFailure("integrator error estimate above tolerance");
    return v;
}

}  // namespace meridian::quad
