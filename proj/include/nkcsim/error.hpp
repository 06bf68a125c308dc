#pragma once

#include <stdexcept>
#include <string>

namespace nkcsim {

enum class ErrorCode {
    InvalidInput,
    UnsupportedRule,
    InvalidSeed,
    ConstraintViolation,
    MissingField,
    UnknownKey,
    TypeMismatch,
    RankDeficient,
    UnsupportedFigure,
    GoldenMismatch,
    Io,
};

// All domain errors carry a code so the CLI can map them to exit codes
// (validation -> 1, golden mismatch -> 2, I/O -> 3).
class SimError : public std::runtime_error {
public:
    SimError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

} // namespace nkcsim
