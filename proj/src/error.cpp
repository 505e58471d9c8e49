#include "evimap/error.hpp"

namespace evimap {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::TotalConflict: return "TotalConflict";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::Unnormalized: return "Unnormalized";
    case ErrorCode::EmptyValueSet: return "EmptyValueSet";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::TrivialObservation: return "TrivialObservation";
    case ErrorCode::NoObservations: return "NoObservations";
    case ErrorCode::NonSingletonObservation: return "NonSingletonObservation";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedDomainSize: return "UnsupportedDomainSize";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace evimap
