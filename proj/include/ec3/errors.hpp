#pragma once

#include <stdexcept>
#include <string>

namespace ec3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define EC3_DEFINE_ERROR(Name)                    \
    struct Name : Error {                         \
        using Error::Error;                       \
    }

EC3_DEFINE_ERROR(NotPrime);
EC3_DEFINE_ERROR(PrimeTooSmall);
EC3_DEFINE_ERROR(SingularCurve);
EC3_DEFINE_ERROR(BadIndex);
EC3_DEFINE_ERROR(NotSquarefree);
EC3_DEFINE_ERROR(ZeroPolynomial);
EC3_DEFINE_ERROR(UnsupportedDegree);
EC3_DEFINE_ERROR(PointNotOnCurve);
EC3_DEFINE_ERROR(WrongOrder);
EC3_DEFINE_ERROR(PointNotRational);
EC3_DEFINE_ERROR(ExcludedParameter);
EC3_DEFINE_ERROR(WrongFieldClass);
EC3_DEFINE_ERROR(FieldTooLarge);
EC3_DEFINE_ERROR(NoDecomposition);

#undef EC3_DEFINE_ERROR

} // namespace ec3
