#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlaws {

/// Thrown when a computation would exceed a configured size or state budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an argument lies outside the mathematical domain of an operation
/// (e.g. an edge probability outside the window a predictor is defined on).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Expression text that could not be parsed, with the byte offset of the problem.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace hyperlaws
