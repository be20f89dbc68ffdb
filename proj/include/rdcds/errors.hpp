#pragma once

#include <stdexcept>

namespace rdcds {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZeroInverse : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct DegeneratePoints : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct ReadInfeasible : Error { using Error::Error; };
struct UpdateInfeasible : Error { using Error::Error; };
struct TailNotZero : Error { using Error::Error; };
struct LengthExceeded : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct SnapshotError : Error { using Error::Error; };
struct ScenarioParseError : Error { using Error::Error; };
struct ScenarioValidationError : Error { using Error::Error; };

} // namespace rdcds
