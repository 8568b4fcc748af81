#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gvc {

enum class ErrorKind {
    DimensionMismatch,
    NegativeFlow,
    BalanceViolation,
    SingularSystem,
    InvalidIndicators,
    DuplicateCountry,
    MissingMacro,
    UnmappedSector,
    UnknownGroup,
    ParseError,
    EmptyInput,
    InvalidParams,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind; what()
/// is prefixed with the kind name, e.g. "NegativeFlow: Z[0,1] = -5".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gvc
