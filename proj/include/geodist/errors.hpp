#pragma once

#include <stdexcept>
#include <string>

namespace geodist {

/// Invalid geometric or numeric input (bad points, broken pairings, ...).
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration grew past its configured element cap.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace geodist
