#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "meridian/errors.hpp"

namespace meridian::special {

enum class BesselKind { J, Y, I, K };

inline const char* kind_name(BesselKind k) {
    switch (k) {
        case BesselKind::J: return "J";
        case BesselKind::Y: return "Y";
        case BesselKind::I: return "I";
        case BesselKind::K: return "K";
    }
    return "?";
}

namespace detail {

// Orders beyond this are outside the validated range of the evaluation layer.
constexpr double kMaxOrder = 50.0;

inline void check_args(double nu, double z) {
    if (!std::isfinite(nu) || !std::isfinite(z)) throw DomainError("bessel: non-finite argument");
    if (std::fabs(nu) > kMaxOrder)
        throw DomainError("bessel: order magnitude exceeds supported range (50)");
    if (!(z > 0.0)) throw DomainError("bessel: argument must be positive");
}

template <typename F>
inline double translate(F&& f, const char* what) {
    try {
        const double v = f();
        if (!std::isfinite(v)) throw OverflowError(std::string(what) + ": non-finite result");
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::overflow_error& e) {
        throw OverflowError(std::string(what) + ": " + e.what());
    } catch (const std::exception& e) {
        throw DomainError(std::string(what) + ": " + e.what());
    }
}

}  // namespace detail

inline double bessel(BesselKind kind, double nu, double z) {
    detail::check_args(nu, z);
    return detail::translate(
        [&] {
            switch (kind) {
                case BesselKind::J: return boost::math::cyl_bessel_j(nu, z);
                case BesselKind::Y: return boost::math::cyl_neumann(nu, z);
                case BesselKind::I: return boost::math::cyl_bessel_i(nu, z);
                case BesselKind::K: return boost::math::cyl_bessel_k(nu, z);
            }
            throw DomainError("bessel: unknown kind");
        },
        "bessel");
}

inline double bessel_derivative(BesselKind kind, double nu, double z) {
    detail::check_args(nu, z);
    return detail::translate(
        [&] {
            switch (kind) {
                case BesselKind::J: return boost::math::cyl_bessel_j_prime(nu, z);
                case BesselKind::Y: return boost::math::cyl_neumann_prime(nu, z);
                case BesselKind::I: return boost::math::cyl_bessel_i_prime(nu, z);
                case BesselKind::K: return boost::math::cyl_bessel_k_prime(nu, z);
            }
            throw DomainError("bessel: unknown kind");
        },
        "bessel_derivative");
}

inline double gamma_real(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
    if (x <= 0.0 && x == std::floor(x)) throw PoleError("gamma: pole at non-positive integer");
    return detail::translate([&] { return boost::math::tgamma<double>(x); }, "gamma");
}

}  // namespace meridian::special
