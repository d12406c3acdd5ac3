#include <tcpair/error.hpp>

namespace tcpair {

auto error_code_name(ErrorCode code) -> std::string_view
{
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::TooFewParts: return "TooFewParts";
    case ErrorCode::NonGenericLength: return "NonGenericLength";
    case ErrorCode::DegenerateLength: return "DegenerateLength";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::RelationNotPreserved: return "RelationNotPreserved";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotAZeroDivisor: return "NotAZeroDivisor";
    case ErrorCode::PullbackMismatch: return "PullbackMismatch";
    case ErrorCode::TopPowerVanishes: return "TopPowerVanishes";
    case ErrorCode::InconsistentFacts: return "InconsistentFacts";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::NotInSubsphere: return "NotInSubsphere";
    case ErrorCode::SubwedgeViolation: return "SubwedgeViolation";
    case ErrorCode::NotNonsingular: return "NotNonsingular";
    case ErrorCode::PositivizationFailed: return "PositivizationFailed";
    case ErrorCode::NoRuleApplies: return "NoRuleApplies";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

auto is_verification_failure(ErrorCode code) -> bool
{
    switch (code) {
    case ErrorCode::RelationNotPreserved:
    case ErrorCode::NotAZeroDivisor:
    case ErrorCode::PullbackMismatch:
    case ErrorCode::TopPowerVanishes:
    case ErrorCode::PositivizationFailed:
    case ErrorCode::NoRuleApplies:
    case ErrorCode::VerificationFailed:
        return true;
    default:
        return false;
    }
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string(error_code_name(code)) + ": " + message),
    _code(code)
{
}

void fail(ErrorCode code, const std::string & message)
{
    throw Error(code, message);
}

}
