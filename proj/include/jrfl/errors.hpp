#pragma once

#include <stdexcept>
#include <string>

namespace jrfl {

#define JRFL_ERROR(Name, Base)                                   \
    struct Name : Base {                                         \
        explicit Name(const std::string& what) : Base(what) {}   \
    };

JRFL_ERROR(PrecisionExhausted, std::runtime_error)
JRFL_ERROR(DivisionByZero, std::domain_error)
JRFL_ERROR(SingularMatrix, std::domain_error)
JRFL_ERROR(RankDeficient, std::domain_error)
JRFL_ERROR(NotIntegral, std::domain_error)
JRFL_ERROR(NoSolution, std::runtime_error)
JRFL_ERROR(ConstraintUnsatisfiable, std::runtime_error)
JRFL_ERROR(NotInSymmetricSpace, std::domain_error)
JRFL_ERROR(NotSRS, std::domain_error)
JRFL_ERROR(MembershipFailed, std::domain_error)
JRFL_ERROR(SumMismatch, std::invalid_argument)
JRFL_ERROR(NotSigmaOutFixed, std::invalid_argument)
JRFL_ERROR(StratumOutOfRange, std::domain_error)
JRFL_ERROR(Unstable, std::runtime_error)
JRFL_ERROR(RankUnsupported, std::invalid_argument)
JRFL_ERROR(ConfigError, std::invalid_argument)

#undef JRFL_ERROR

}  // namespace jrfl
