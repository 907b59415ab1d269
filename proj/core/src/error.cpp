#include "issuecast/error.hpp"

namespace issuecast {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::InsufficientLength: return "InsufficientLength";
        case Errc::ZeroVariance: return "ZeroVariance";
        case Errc::SingularRegression: return "SingularRegression";
        case Errc::DomainError: return "DomainError";
        case Errc::HorizonZero: return "HorizonZero";
        case Errc::WindowMismatch: return "WindowMismatch";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::ConstantInput: return "ConstantInput";
        case Errc::InvalidDf: return "InvalidDf";
        case Errc::SeriesTooShort: return "SeriesTooShort";
        case Errc::InvalidRange: return "InvalidRange";
        case Errc::IoError: return "IoError";
        case Errc::FormatError: return "FormatError";
        case Errc::AuthError: return "AuthError";
        case Errc::RateLimited: return "RateLimited";
        case Errc::NotFound: return "NotFound";
        case Errc::NetworkError: return "NetworkError";
    }
    return "Unknown";
}

}  // namespace issuecast
