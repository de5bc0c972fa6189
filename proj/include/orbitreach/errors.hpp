#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitreach {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A point violates a constraint of its state space.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite state or collapsed covector during integration.
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// Two trajectories could not be glued within tolerance.
class GlueError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace orbitreach
