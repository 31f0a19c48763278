#ifndef EDA_ERROR_HPP
#define EDA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace eda {

enum class ErrorKind {
    EmptyClass,
    NonFiniteValue,
    DomainError,
    DimensionMismatch,
    SingularCovariance,
    TooFewSamples,
    DegenerateFeature,
    NotPositiveDefinite,
    ParseError,
    MissingLabel,
    SchemaMismatch,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace eda

#endif
