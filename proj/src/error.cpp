#include "nkcsim/error.hpp"

namespace nkcsim {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::UnsupportedRule: return "unsupported-rule";
        case ErrorCode::InvalidSeed: return "invalid-seed";
        case ErrorCode::ConstraintViolation: return "constraint-violation";
        case ErrorCode::MissingField: return "missing-field";
        case ErrorCode::UnknownKey: return "unknown-key";
        case ErrorCode::TypeMismatch: return "type-mismatch";
        case ErrorCode::RankDeficient: return "rank-deficient";
        case ErrorCode::UnsupportedFigure: return "unsupported-figure";
        case ErrorCode::GoldenMismatch: return "golden-mismatch";
        case ErrorCode::Io: return "io-error";
    }
    return "unknown";
}

} // namespace nkcsim
