#ifndef SANDPILE_ERROR_HPP
#define SANDPILE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sandpile {

enum class ErrorKind {
    LoopEdge,
    Disconnected,
    BadVertexId,
    VertexNotInSet,
    NotSquare,
    Singular,
    NotSymmetric,
    DimensionMismatch,
    NonzeroDegree,
    GraphMismatch,
    NotReduced,
    ValueOutOfRange,
    NotSpanningTree,
    TooLarge,
    NotWinnable,
    BadConstant,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure raised by the library. The kind is stable and is what
// the CLI reports in its machine-readable error payload.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace sandpile

#endif
