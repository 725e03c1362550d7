#pragma once
#include <stdexcept>
#include <string>

namespace tbp {

struct DimensionMismatchError : std::invalid_argument {
    explicit DimensionMismatchError(const std::string& what)
        : std::invalid_argument(what) {}
};

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what)
        : std::runtime_error(what) {}
};

struct RankDeficientError : std::runtime_error {
    explicit RankDeficientError(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when an arm sits exactly on the threshold with epsilon = 0:
// the instance complexity is infinite and no design can solve it.
struct DegenerateInstanceError : std::runtime_error {
    explicit DegenerateInstanceError(const std::string& what)
        : std::runtime_error(what) {}
};

struct NotInitializedError : std::runtime_error {
    explicit NotInitializedError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace tbp
