#pragma once

#include <stdexcept>
#include <string>

namespace odolab {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ODOLAB_ERROR(Name)                                                    \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

ODOLAB_ERROR(CapExceeded);
ODOLAB_ERROR(CarryOverflow);
ODOLAB_ERROR(UnresolvedTail);
ODOLAB_ERROR(StrategyInfeasible);
ODOLAB_ERROR(HypothesisUnavailable);
ODOLAB_ERROR(NotFoundWithinHorizon);
ODOLAB_ERROR(WindowTooSmall);
ODOLAB_ERROR(UnknownTheorem);
ODOLAB_ERROR(BracketFailure);
ODOLAB_ERROR(SpecError);
ODOLAB_ERROR(BackendUnsupported);
ODOLAB_ERROR(KindMismatch);
ODOLAB_ERROR(DomainError);

#undef ODOLAB_ERROR

}  // namespace odolab
