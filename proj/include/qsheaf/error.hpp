#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsheaf {

enum class Errc {
    InvalidInput,
    NonPrimitiveRay,
    NonUnimodularCone,
    IncompleteFan,
    DuplicateRay,
    NotInSupport,
    TorsionDetected,
    NonIntegralCoefficient,
    NoPositiveClassFound,
    NonSquare,
    NonHomogeneousIdeal,
    UnsupportedNovikovShape,
    NotExactDivision,
    ParseError,
    CharacterOutsidePolytope,
    DuplicateEntry,
    UnknownRayIndex,
    DegenerateDeformation,
    NotDominating,
    AnchorDegenerate,
    NonFanoEnumerationUnbounded,
    ModelError,
    FileNotFound,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure surfaced by the library carries one of the named codes above;
/// the CLI reports `name(): what()`.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

/// Parse failures additionally record the 1-based column (and line, for files).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(Errc::ParseError, message + " at line " + std::to_string(line) +
                                      ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidInput: return "InvalidInput";
        case Errc::NonPrimitiveRay: return "NonPrimitiveRay";
        case Errc::NonUnimodularCone: return "NonUnimodularCone";
        case Errc::IncompleteFan: return "IncompleteFan";
        case Errc::DuplicateRay: return "DuplicateRay";
        case Errc::NotInSupport: return "NotInSupport";
        case Errc::TorsionDetected: return "TorsionDetected";
        case Errc::NonIntegralCoefficient: return "NonIntegralCoefficient";
        case Errc::NoPositiveClassFound: return "NoPositiveClassFound";
        case Errc::NonSquare: return "NonSquare";
        case Errc::NonHomogeneousIdeal: return "NonHomogeneousIdeal";
        case Errc::UnsupportedNovikovShape: return "UnsupportedNovikovShape";
        case Errc::NotExactDivision: return "NotExactDivision";
        case Errc::ParseError: return "ParseError";
        case Errc::CharacterOutsidePolytope: return "CharacterOutsidePolytope";
        case Errc::DuplicateEntry: return "DuplicateEntry";
        case Errc::UnknownRayIndex: return "UnknownRayIndex";
        case Errc::DegenerateDeformation: return "DegenerateDeformation";
        case Errc::NotDominating: return "NotDominating";
        case Errc::AnchorDegenerate: return "AnchorDegenerate";
        case Errc::NonFanoEnumerationUnbounded: return "NonFanoEnumerationUnbounded";
        case Errc::ModelError: return "ModelError";
        case Errc::FileNotFound: return "FileNotFound";
    }
    return "Unknown";
}

}  // namespace qsheaf
