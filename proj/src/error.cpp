#include "gfusion/error.hpp"

namespace gfusion
{

std::string_view to_string(Errc code)
{
    switch (code)
    {
        case Errc::NotHermitian: return "NotHermitian";
        case Errc::NonFinite: return "NonFinite";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::DimMismatch: return "DimMismatch";
        case Errc::InvalidSubspace: return "InvalidSubspace";
        case Errc::InvalidFamily: return "InvalidFamily";
        case Errc::NotAFrame: return "NotAFrame";
        case Errc::BlockCountMismatch: return "BlockCountMismatch";
        case Errc::BlockOutOfSubspace: return "BlockOutOfSubspace";
        case Errc::NonPositiveWeight: return "NonPositiveWeight";
        case Errc::TooFewMembers: return "TooFewMembers";
        case Errc::NotRepresentable: return "NotRepresentable";
        case Errc::HypothesisViolation: return "HypothesisViolation";
        case Errc::SemanticsUnsupported: return "SemanticsUnsupported";
        case Errc::GeneratorViolation: return "GeneratorViolation";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::ConditionNotEstablished: return "ConditionNotEstablished";
        case Errc::IndexOutOfWindow: return "IndexOutOfWindow";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::SubgroupTooSmall: return "SubgroupTooSmall";
        case Errc::InvalidRange: return "InvalidRange";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownFixture: return "UnknownFixture";
        case Errc::Usage: return "Usage";
    }
    return "Unknown";
}

}  // namespace gfusion
