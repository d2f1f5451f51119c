#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vd {

enum class ErrorCode {
    DegreeTooLow,
    DivisionByVanishingSeries,
    ConstantPolynomial,
    ZeroOutsideDisc,
    ParseError,
    ParameterOutOfRange,
    PoleNotCancelled,
    ConstantSymbol,
    RadiusHitsPole,
    NearCircleAmbiguous,
    Z0AtOrigin,
    InsufficientVanishing,
    QuotientNotAnalytic,
    QNotBounded,
    NotInterpolatingAsGiven,
    NotLocallyUnivalent,
    NotInDomain,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::DivisionByVanishingSeries: return "DivisionByVanishingSeries";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::ZeroOutsideDisc: return "ZeroOutsideDisc";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::PoleNotCancelled: return "PoleNotCancelled";
    case ErrorCode::ConstantSymbol: return "ConstantSymbol";
    case ErrorCode::RadiusHitsPole: return "RadiusHitsPole";
    case ErrorCode::NearCircleAmbiguous: return "NearCircleAmbiguous";
    case ErrorCode::Z0AtOrigin: return "Z0AtOrigin";
    case ErrorCode::InsufficientVanishing: return "InsufficientVanishing";
    case ErrorCode::QuotientNotAnalytic: return "QuotientNotAnalytic";
    case ErrorCode::QNotBounded: return "QNotBounded";
    case ErrorCode::NotInterpolatingAsGiven: return "NotInterpolatingAsGiven";
    case ErrorCode::NotLocallyUnivalent: return "NotLocallyUnivalent";
    case ErrorCode::NotInDomain: return "NotInDomain";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failures also report the byte offset in the input.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorCode::ParseError, what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace vd
