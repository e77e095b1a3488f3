#include "monotree/errors.hpp"

namespace monotree {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidDirection: return "invalid-direction";
        case ErrorCode::OppositeDirections: return "non-opposite-violation";
        case ErrorCode::GeneralPosition: return "general-position";
        case ErrorCode::DegenerateEdge: return "degenerate-edge";
        case ErrorCode::WedgeBoundary: return "wedge-boundary";
        case ErrorCode::NonMonotone: return "non-monotone";
        case ErrorCode::InvalidTree: return "invalid-tree";
        case ErrorCode::CapExceeded: return "cap-exceeded";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace monotree
