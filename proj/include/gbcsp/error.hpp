#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gbcsp {

// Invalid arguments or violated operation preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text; the message carries the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Operation not defined for this input (e.g. non-clausal relation as DIMACS).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input exceeds an engineering bound; the message suggests an alternative.
class TooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gbcsp
