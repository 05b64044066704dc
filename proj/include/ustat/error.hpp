#pragma once

#include <stdexcept>
#include <string>

namespace ustat {

enum class ErrorCode {
    InvalidDegrees,
    EmptyProblem,
    OutOfRange,
    CapExceeded,
    InvalidArgument,
    ParseError,
    Config,
};

// Every library failure is reported through this type; the CLI maps the code
// onto its exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Parse and configuration problems are user-input errors; everything else is
    // a numeric/domain failure.
    bool is_input_error() const noexcept {
        return code_ == ErrorCode::ParseError || code_ == ErrorCode::Config;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) fail(code, what);
}

}  // namespace ustat
