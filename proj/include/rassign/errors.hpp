#pragma once

#include <stdexcept>
#include <string>

namespace rassign {

// Malformed or inconsistent input: unknown ids, bad rankings, matrices that are not doubly stochastic.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured bound.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called on an argument that violates its documented precondition.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rassign
