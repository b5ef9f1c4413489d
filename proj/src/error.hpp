#pragma once

#include <stdexcept>
#include <string>

namespace nsbox {

enum class ErrorCode {
    invalid_argument,
    parse_error,
    validation_failed,
    cap_exceeded,
    unsupported,
    io_error,
    internal,
};

/// Library-wide exception. Carries a stable code so the C boundary can map
/// failures to numeric statuses without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace nsbox
