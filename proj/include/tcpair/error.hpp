#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcpair {

enum class ErrorCode {
    ParseError,
    SchemaError,
    SizeTooLarge,
    BadPartition,
    TooFewParts,
    NonGenericLength,
    DegenerateLength,
    FieldMismatch,
    RingMismatch,
    RelationNotPreserved,
    IndexOutOfRange,
    NotAZeroDivisor,
    PullbackMismatch,
    TopPowerVanishes,
    InconsistentFacts,
    PreconditionFailed,
    NotOnSphere,
    NotInSubsphere,
    SubwedgeViolation,
    NotNonsingular,
    PositivizationFailed,
    NoRuleApplies,
    VerificationFailed,
};

auto error_code_name(ErrorCode code) -> std::string_view;

/// True for codes that signal a failed internal or certificate check rather
/// than bad user input.
auto is_verification_failure(ErrorCode code) -> bool;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string & message);

    [[nodiscard]] auto code() const noexcept -> ErrorCode { return _code; }

private:
    ErrorCode _code;
};

[[noreturn]] void fail(ErrorCode code, const std::string & message);

}
