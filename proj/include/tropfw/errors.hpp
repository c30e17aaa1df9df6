#ifndef TROPFW_ERRORS_HPP
#define TROPFW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tropfw {

struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a gradient is requested at a point where some argmax/argmin
// set is not a singleton.
struct TiePresent : std::runtime_error {
    explicit TiePresent(const std::string& what) : std::runtime_error(what) {}
};

// A negative-weight directed cycle was found while closing a residual graph;
// signals that the input flow was not optimal.
struct NegativeCycle : std::runtime_error {
    explicit NegativeCycle(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundedDirection : std::runtime_error {
    explicit UnboundedDirection(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tropfw

#endif  // TROPFW_ERRORS_HPP
