#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mimo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyVector : Error { EmptyVector() : Error("empty vector") {} };
struct EmptyMatrix : Error { EmptyMatrix() : Error("empty matrix") {} };
struct InvalidP : Error { InvalidP() : Error("lp-norm requires p >= 1") {} };
struct OffsetOutOfRange : Error { OffsetOutOfRange() : Error("diagonal offset out of range") {} };
struct DimensionMismatch : Error { DimensionMismatch() : Error("dimension mismatch") {} };
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(std::size_t pivot)
        : Error("matrix not positive definite (pivot " + std::to_string(pivot) + ")") {}
};
struct NotPsd : Error { NotPsd() : Error("matrix not positive semi-definite") {} };
struct TooSmall : Error { TooSmall() : Error("dimension too small") {} };

struct DegenerateRecurrence : Error {
    std::size_t index;
    explicit DegenerateRecurrence(std::size_t i)
        : Error("degenerate recurrence at index " + std::to_string(i)), index(i) {}
};
struct DegenerateDivision : Error {
    std::size_t index;
    explicit DegenerateDivision(std::size_t i)
        : Error("degenerate division at index " + std::to_string(i)), index(i) {}
};

struct UnknownMethod : Error {
    explicit UnknownMethod(const std::string& m) : Error("unknown method: " + m) {}
};
struct BitCountMismatch : Error { BitCountMismatch() : Error("bit count not divisible by bits per symbol") {} };
struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& what) : Error("invalid config: " + what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error("i/o error: " + what) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

}  // namespace mimo
