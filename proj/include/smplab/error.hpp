#pragma once

#include <stdexcept>
#include <string>

namespace smplab {

/// Raised when an operation is called outside its domain (bad word, unrealizable
/// tuple, pair outside the region an operation requires, ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require(bool condition, const char* message)
{
    if (!condition) {
        throw precondition_error(message);
    }
}

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw precondition_error(message);
    }
}

} // namespace detail
} // namespace smplab
