#pragma once

#include <stdexcept>
#include <string>

namespace nonsig {

/// Out-of-range argument or malformed caller input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data that parses but violates a required invariant (normalization,
/// no-signaling, ...). The message names the offending field/index.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem exceeds the supported desk-scale size limits.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation requires a functional form the given object does not carry.
class UnsupportedFormError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An LP solve or iterative numerical routine failed to converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nonsig
