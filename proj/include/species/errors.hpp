#pragma once

#include <stdexcept>
#include <string>

namespace species {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& m) : std::runtime_error(m) {}
};

struct NotAUnitError : std::runtime_error {
    explicit NotAUnitError(const std::string& m) : std::runtime_error(m) {}
};

struct InvalidConstantError : std::runtime_error {
    explicit InvalidConstantError(const std::string& m) : std::runtime_error(m) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

struct NotASpeciesError : std::runtime_error {
    explicit NotASpeciesError(const std::string& m) : std::runtime_error(m) {}
};

struct NotInitializedError : std::runtime_error {
    explicit NotInitializedError(const std::string& m) : std::runtime_error(m) {}
};

struct NotCauchyError : std::runtime_error {
    explicit NotCauchyError(const std::string& m) : std::runtime_error(m) {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedContextError : std::runtime_error {
    explicit UnsupportedContextError(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& m, size_t p)
        : std::runtime_error(m + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

} // namespace species
