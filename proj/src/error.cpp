#include "eda/error.hpp"

namespace eda {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::DegenerateFeature: return "DegenerateFeature";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace eda
