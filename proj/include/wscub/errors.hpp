#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wscub {

/// Kernel evaluated at (numerically) coincident points.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller passed a value outside an operation's documented range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive procedure ran out of budget before reaching the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Invalid or degenerate surface mesh. `triangle()` is npos when no single triangle is at fault.
class MeshError : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit MeshError(const std::string& what, std::size_t triangle = npos)
        : std::runtime_error(what), triangle_(triangle) {}

    std::size_t triangle() const noexcept { return triangle_; }

private:
    std::size_t triangle_;
};

/// Malformed mesh file. Line numbers are 1-based; 0 means end of input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace wscub
