#pragma once

#include <stdexcept>
#include <string>

namespace idsolve {

// Every failure mode the library reports is a named subclass of Error so
// callers (and the CLI's exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define IDSOLVE_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& msg)                        \
            : Error(std::string(#Name) + ": " + msg) {}              \
    }

IDSOLVE_DEFINE_ERROR(GridMismatch);
IDSOLVE_DEFINE_ERROR(NonRealResult);
IDSOLVE_DEFINE_ERROR(DomainError);
IDSOLVE_DEFINE_ERROR(AmbiguousCase);
IDSOLVE_DEFINE_ERROR(MissingSpecialValue);
IDSOLVE_DEFINE_ERROR(SolvabilityViolation);
IDSOLVE_DEFINE_ERROR(ConstraintInconsistency);
IDSOLVE_DEFINE_ERROR(CertificateFailed);
IDSOLVE_DEFINE_ERROR(NoConvergence);
IDSOLVE_DEFINE_ERROR(NonFiniteValue);
IDSOLVE_DEFINE_ERROR(LipschitzViolation);
IDSOLVE_DEFINE_ERROR(GrowthViolation);
IDSOLVE_DEFINE_ERROR(PeriodicityViolation);
IDSOLVE_DEFINE_ERROR(ContractionViolation);
IDSOLVE_DEFINE_ERROR(GridTooCoarse);
IDSOLVE_DEFINE_ERROR(ConfigParse);
IDSOLVE_DEFINE_ERROR(IoError);

#undef IDSOLVE_DEFINE_ERROR

} // namespace idsolve
