#pragma once

#include <stdexcept>
#include <string>

namespace gravint {

// Input outside the mathematical domain of an operation (singular radius,
// horizon crossing, non-physical spectrum, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Malformed configuration or data file.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message)
{
    if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace gravint
