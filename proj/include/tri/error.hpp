#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tri {

enum class Errc {
    NonInvolution,
    FaceSelfGluing,
    IndexOutOfRange,
    PermutationNotFixingFace,
    InvalidEdgeIdentification,
    DisconnectedTriangulation,
    HasBoundaryFaces,
    ParameterOutOfRange,
    MoveNotApplicable,
    NotIdeal,
    NonOrientable,
    DegenerateShape,
    LengthMismatch,
    NotAdmissible,
    MatchingViolated,
    SizeBoundExceeded,
    BudgetExceeded,
    RewriteFailed,
    InvalidPath,
    Parse,
};

constexpr std::string_view errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::NonInvolution: return "NonInvolution";
    case Errc::FaceSelfGluing: return "FaceSelfGluing";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::PermutationNotFixingFace: return "PermutationNotFixingFace";
    case Errc::InvalidEdgeIdentification: return "InvalidEdgeIdentification";
    case Errc::DisconnectedTriangulation: return "DisconnectedTriangulation";
    case Errc::HasBoundaryFaces: return "HasBoundaryFaces";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::MoveNotApplicable: return "MoveNotApplicable";
    case Errc::NotIdeal: return "NotIdeal";
    case Errc::NonOrientable: return "NonOrientable";
    case Errc::DegenerateShape: return "DegenerateShape";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::MatchingViolated: return "MatchingViolated";
    case Errc::SizeBoundExceeded: return "SizeBoundExceeded";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::RewriteFailed: return "RewriteFailed";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::Parse: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tri
