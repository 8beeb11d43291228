#pragma once

#include <stdexcept>
#include <string>

namespace meridian {

// Base for all library errors. Every throw carries a stable kind() tag so the
// CLI can emit machine-readable error objects without string matching.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define MERIDIAN_DEFINE_ERROR(NAME)                                          \
    class NAME : public Error {                                              \
    public:                                                                   \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {}          \
    }

MERIDIAN_DEFINE_ERROR(DegenerateAxis);      // rho = 0: the axial direction I is undefined
MERIDIAN_DEFINE_ERROR(ZeroPoint);           // r = 0: polar angle undefined
MERIDIAN_DEFINE_ERROR(StencilOutOfDomain);  // FD stencil would leave the half-plane rho > 0
MERIDIAN_DEFINE_ERROR(EmptyPath);           // polyline with fewer than 2 vertices
MERIDIAN_DEFINE_ERROR(DomainError);         // argument outside a function's domain
MERIDIAN_DEFINE_ERROR(OverflowError);       // result not representable in double
MERIDIAN_DEFINE_ERROR(PoleError);           // evaluation at a pole
MERIDIAN_DEFINE_ERROR(DegenerateMode);      // separation constants collide (Euler branch applies)
MERIDIAN_DEFINE_ERROR(ZeroFrequency);       // separation frequency must be nonzero
MERIDIAN_DEFINE_ERROR(ArityMismatch);       // candidate arity does not match the system
MERIDIAN_DEFINE_ERROR(NonFiniteSample);     // candidate produced NaN/Inf on the grid
MERIDIAN_DEFINE_ERROR(ConvergenceDomain);   // transform evaluated outside its convergence region
MERIDIAN_DEFINE_ERROR(QuadratureFailure);   // integrator could not reach the requested tolerance
MERIDIAN_DEFINE_ERROR(PartialUnavailable);  // needed derivative neither supplied nor computable
MERIDIAN_DEFINE_ERROR(ResolutionTooLow);    // contour grid below the minimum resolution
MERIDIAN_DEFINE_ERROR(InvalidParams);       // parameter set violates a documented precondition
MERIDIAN_DEFINE_ERROR(NoClosedForm);        // no closed-form answer exists for this input

#undef MERIDIAN_DEFINE_ERROR

}  // namespace meridian
