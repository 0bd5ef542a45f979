#pragma once

#include <stdexcept>
#include <string>

namespace s2v {

// A prime-valued argument was not prime.
class InvalidPrime : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An argument tuple violates a documented precondition.
class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact division left a remainder; signals an arithmetic bug, never a
// property of the inputs.
class DivisibilityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Modular precision escalation reached its cap without resolving the query.
// Raising the cap is the remedy; a silent wrong answer is never produced.
class PrecisionExceeded : public std::runtime_error {
public:
    PrecisionExceeded(unsigned cap, const std::string& what)
        : std::runtime_error(what), cap_(cap) {}

    unsigned cap() const noexcept { return cap_; }

private:
    unsigned cap_;
};

// A classification policy was requested outside its supported domain.
class PolicyMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A tree level outside the built range was requested.
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace s2v
