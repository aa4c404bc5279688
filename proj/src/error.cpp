#include "sandpile/error.hpp"

namespace sandpile {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadVertexId: return "BadVertexId";
    case ErrorKind::VertexNotInSet: return "VertexNotInSet";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonzeroDegree: return "NonzeroDegree";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::NotSpanningTree: return "NotSpanningTree";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotWinnable: return "NotWinnable";
    case ErrorKind::BadConstant: return "BadConstant";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace sandpile
