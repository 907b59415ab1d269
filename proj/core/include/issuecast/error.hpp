#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace issuecast {

enum class Errc {
    InvalidArgument,
    InsufficientLength,
    ZeroVariance,
    SingularRegression,
    DomainError,
    HorizonZero,
    WindowMismatch,
    LengthMismatch,
    EmptyInput,
    ConstantInput,
    InvalidDf,
    SeriesTooShort,
    InvalidRange,
    IoError,
    FormatError,
    AuthError,
    RateLimited,
    NotFound,
    NetworkError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so batch
/// drivers can report it per project without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace issuecast
