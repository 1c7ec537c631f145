#pragma once

#include <stdexcept>
#include <string>

namespace gkmfiber {

// Bad input: malformed data, violated preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured bound (group order, degree cap) was exceeded.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal conventions disagree with each other. Indicates a bug, not bad input.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A mathematical verification did not hold.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gkmfiber
