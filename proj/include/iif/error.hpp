#pragma once

#include <stdexcept>
#include <string>

namespace iif {

enum class ErrorKind {
    ZeroDenominator,
    JetLimitExceeded,
    LeadingCoefficientZero,
    ZeroBase,
    NotInvariant,
    NonSplittingDenominator,
    ZeroBDivisor,
    SingularAtOrigin,
    DomainViolation,
    BlowUp,
    ParseError,
    NonCoprime,
    Unsupported,
};

const char* error_kind_name(ErrorKind kind);

class MathError : public std::runtime_error {
public:
    MathError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failure with a 1-based line/column into the source text.
class ParseError : public MathError {
public:
    ParseError(const std::string& what, int line, int column)
        : MathError(ErrorKind::ParseError,
                    what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace iif
