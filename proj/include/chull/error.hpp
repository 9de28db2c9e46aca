#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chull {

enum class ErrorCode {
    InvalidArgument,
    KindMismatch,
    ShapeMismatch,
    NotDominant,
    InvalidShape,
    Parity,
    InvalidClass,
    Precondition,
    NormalizationRequired,
    SpanViolation,
    CapExceeded,
    Overflow,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace chull
