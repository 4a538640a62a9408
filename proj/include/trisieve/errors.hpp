#ifndef TRISIEVE_ERRORS_HPP
#define TRISIEVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trisieve {

// Raised on malformed or out-of-contract input (bad schema, zero divisor,
// non-isolating rectangle, ...). Maps to CLI exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an internal certificate fails to validate. Any occurrence is a
// bug in this library, never a property of the input. Maps to CLI exit code 2.
struct soundness_error : std::logic_error {
    explicit soundness_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace trisieve

#endif
