#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace copmix {

enum class ErrorKind {
    Input,
    Parameter,
    Numeric,
    Unsupported,
    NotApplicable,
    Bracket,
    SingularCopula,
    InfeasibleEnvelope,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base class for every error raised by the library. The kind is used by the
/// CLI to pick an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define COPMIX_DEFINE_ERROR(Name, Kind)                                        \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
    }

COPMIX_DEFINE_ERROR(InputError, Input);
COPMIX_DEFINE_ERROR(ParameterError, Parameter);
COPMIX_DEFINE_ERROR(NumericError, Numeric);
COPMIX_DEFINE_ERROR(UnsupportedError, Unsupported);
COPMIX_DEFINE_ERROR(NotApplicableError, NotApplicable);
COPMIX_DEFINE_ERROR(BracketError, Bracket);
COPMIX_DEFINE_ERROR(SingularCopulaError, SingularCopula);
COPMIX_DEFINE_ERROR(InfeasibleEnvelopeError, InfeasibleEnvelope);

#undef COPMIX_DEFINE_ERROR

}  // namespace copmix
