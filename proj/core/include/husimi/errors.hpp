#pragma once

#include <stdexcept>
#include <string>

namespace husimi {

// Bad user input: malformed config text, invariant violations, out-of-range
// requests. Maps to CLI exit code 1.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric refusal or failure: argument outside a routine's validated domain,
// non-convergence, degenerate pole configurations. Maps to CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace husimi
