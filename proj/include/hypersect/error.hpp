#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypersect {

enum class ErrorKind {
    InvalidParameter,
    Domain,
    RegionUnbounded,
    ConvexityViolation,
    Evaluation,
    IllConditionedRegion,
    DegenerateCurvature,
    Precondition,
    Inconclusive,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hypersect
