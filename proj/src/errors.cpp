#include "polyball/errors.hpp"

namespace polyball {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegreeExceeded: return "DegreeExceeded";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::CommutationViolation: return "CommutationViolation";
        case ErrorCode::DegenerateSample: return "DegenerateSample";
        case ErrorCode::NotInClosedBall: return "NotInClosedBall";
        case ErrorCode::KernelNotUnitary: return "KernelNotUnitary";
        case ErrorCode::Diverging: return "Diverging";
        case ErrorCode::ConstantTermAmbiguity: return "ConstantTermAmbiguity";
        case ErrorCode::ZeroConstantTermViolated: return "ZeroConstantTermViolated";
        case ErrorCode::ResolventSingular: return "ResolventSingular";
        case ErrorCode::FactorizationFailed: return "FactorizationFailed";
        case ErrorCode::DefectRankNotOne: return "DefectRankNotOne";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

bool is_numerical_failure(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateSample:
        case ErrorCode::NotInClosedBall:
        case ErrorCode::KernelNotUnitary:
        case ErrorCode::Diverging:
        case ErrorCode::ResolventSingular:
        case ErrorCode::FactorizationFailed:
        case ErrorCode::DefectRankNotOne:
            return true;
        default:
            return false;
    }
}

} // namespace polyball
