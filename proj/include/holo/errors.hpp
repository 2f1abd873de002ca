#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Validation / domain failures (bad parameters, mismatched grids, ...).
// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// File and stream failures. The CLI maps these to exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace holo
