#pragma once

#include <stdexcept>
#include <string>

namespace dgper {

/// Every failure mode the engine can report. The CLI prints the enum name
/// verbatim, so the names are part of the stable interface.
enum class ErrorCode {
    P1Violation,
    P2Violation,
    P3Violation,
    AssocViolation,
    LeibnizViolation,
    DSquareViolation,
    CapInconsistent,
    VertexMismatch,
    DegreeMismatch,
    CapExceeded,
    InconsistentRelation,
    NotFilterable,
    NotFiltForm,
    NotDgFlag,
    NotInjective,
    MissingSimple,
    NotIdempotent,
    UnsupportedCharacteristic,
    UnsupportedField,
    NonzeroDerivation,
    DegreeCapExceeded,
    NotKoszul,
    InfiniteResolution,
    VerificationFailed,
    ParseError,
    ValidationError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace dgper
