#pragma once
// Error taxonomy shared by every module. Each failure mode the public API
// can signal gets one ErrorCode; Error carries the code plus a message. The
// CLI maps codes onto exit statuses (input errors vs numerical failures).

#include <stdexcept>
#include <string>

namespace polyball {

enum class ErrorCode {
    DegreeExceeded,
    SizeOverflow,
    IndexOutOfRange,
    ShapeMismatch,
    CommutationViolation,
    DegenerateSample,
    NotInClosedBall,
    KernelNotUnitary,
    Diverging,
    ConstantTermAmbiguity,
    ZeroConstantTermViolated,
    ResolventSingular,
    FactorizationFailed,
    DefectRankNotOne,
    InvalidArgument,
    ParseError,
};

const char* error_code_name(ErrorCode code);

// True for failures that arise during computation (singular resolvents,
// failed factorizations, diverging sums) rather than from malformed input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace polyball
