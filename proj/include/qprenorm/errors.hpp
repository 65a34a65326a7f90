#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

/// Base of all structured numerical errors. `name()` is the stable
/// identifier surfaced by the CLI on nonzero exit.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define QPR_DEFINE_ERROR(NAME)                                         \
    class NAME : public Error {                                        \
    public:                                                             \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}  \
    }

QPR_DEFINE_ERROR(DomainMismatch);
QPR_DEFINE_ERROR(ContainmentViolation);
QPR_DEFINE_ERROR(DegenerateScaling);
QPR_DEFINE_ERROR(InsufficientTail);
QPR_DEFINE_ERROR(NoConvergence);
QPR_DEFINE_ERROR(SpectrumAnomaly);
QPR_DEFINE_ERROR(InclusionFailure);
QPR_DEFINE_ERROR(BracketMiss);
QPR_DEFINE_ERROR(NoCycle);
QPR_DEFINE_ERROR(ZeroSectionValue);
QPR_DEFINE_ERROR(AliasError);
QPR_DEFINE_ERROR(PowerIterationDivergence);
QPR_DEFINE_ERROR(MatchFailure);
QPR_DEFINE_ERROR(CurveSolveFailure);
QPR_DEFINE_ERROR(ResonantDenominator);
QPR_DEFINE_ERROR(ZeroDenominator);
QPR_DEFINE_ERROR(ZeroImage);
QPR_DEFINE_ERROR(ParameterOutOfRange);
QPR_DEFINE_ERROR(SchemaMismatch);
QPR_DEFINE_ERROR(ConfigError);

#undef QPR_DEFINE_ERROR

} // namespace qpr
