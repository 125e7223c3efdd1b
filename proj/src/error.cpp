#include "domsplit/error.hpp"

namespace domsplit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
        case ErrorCode::NonTransitive: return "NonTransitive";
        case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
        case ErrorCode::PeriodTooLarge: return "PeriodTooLarge";
        case ErrorCode::DisjointRanges: return "DisjointRanges";
        case ErrorCode::WindowTooShort: return "WindowTooShort";
        case ErrorCode::InadmissibleWindow: return "InadmissibleWindow";
        case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
        case ErrorCode::CenterNotSorted: return "CenterNotSorted";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::GapTooSmall: return "GapTooSmall";
        case ErrorCode::FrameMismatch: return "FrameMismatch";
        case ErrorCode::Ineq4Violated: return "Ineq4Violated";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConfigParse: return "ConfigParse";
        case ErrorCode::FileNotFound: return "FileNotFound";
    }
    return "Unknown";
}

}  // namespace domsplit
