#pragma once

#include <stdexcept>
#include <string>

namespace drl {

enum class ErrorCode {
    invalid_argument,
    domain,
    capacity,
    checkpoint_mismatch,
    io,
    budget,
};

// Every failure raised by the core carries a code so the C layer can map it
// to a stable status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace drl
