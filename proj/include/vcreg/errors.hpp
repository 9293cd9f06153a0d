#pragma once

#include <stdexcept>
#include <string>

namespace vcreg {

// Bad arguments, malformed files, violated preconditions. Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Density or goodness requested on a set of measure zero.
class ZeroMeasureError : public InputError {
public:
    explicit ZeroMeasureError(const std::string& what) : InputError(what) {}
};

// A constructed object failed its exact post-check. Maps to exit code 1.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vcreg
