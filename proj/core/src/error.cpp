#include "dgper/error.hpp"

namespace dgper {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::P1Violation: return "P1Violation";
    case ErrorCode::P2Violation: return "P2Violation";
    case ErrorCode::P3Violation: return "P3Violation";
    case ErrorCode::AssocViolation: return "AssocViolation";
    case ErrorCode::LeibnizViolation: return "LeibnizViolation";
    case ErrorCode::DSquareViolation: return "DSquareViolation";
    case ErrorCode::CapInconsistent: return "CapInconsistent";
    case ErrorCode::VertexMismatch: return "VertexMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InconsistentRelation: return "InconsistentRelation";
    case ErrorCode::NotFilterable: return "NotFilterable";
    case ErrorCode::NotFiltForm: return "NotFiltForm";
    case ErrorCode::NotDgFlag: return "NotDgFlag";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::MissingSimple: return "MissingSimple";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::NonzeroDerivation: return "NonzeroDerivation";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::NotKoszul: return "NotKoszul";
    case ErrorCode::InfiniteResolution: return "InfiniteResolution";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

} // namespace dgper
