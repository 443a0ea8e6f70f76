#pragma once

#include <stdexcept>
#include <string>

namespace weyltrop {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define WEYLTROP_ERROR_TYPE(Name)                                      \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}  \
    }

WEYLTROP_ERROR_TYPE(DivisionByZero);
WEYLTROP_ERROR_TYPE(PoleAtPoint);
WEYLTROP_ERROR_TYPE(NonClearedExponent);
WEYLTROP_ERROR_TYPE(DegenerateSpecialization);
WEYLTROP_ERROR_TYPE(IndexOutOfRange);
WEYLTROP_ERROR_TYPE(ShapeMismatch);
WEYLTROP_ERROR_TYPE(NotAffine);
WEYLTROP_ERROR_TYPE(HalfIntegerResult);
WEYLTROP_ERROR_TYPE(AssumptionViolated);
WEYLTROP_ERROR_TYPE(NotSubtractionFree);
WEYLTROP_ERROR_TYPE(NonMonomialCoefficient);
WEYLTROP_ERROR_TYPE(NotZetaExpressible);
WEYLTROP_ERROR_TYPE(NonIntegralSolution);
WEYLTROP_ERROR_TYPE(NonConvergent);
WEYLTROP_ERROR_TYPE(BadShape);
WEYLTROP_ERROR_TYPE(DegenerateScale);

#undef WEYLTROP_ERROR_TYPE

}  // namespace weyltrop
