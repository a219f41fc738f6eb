#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uavdql {

// Invalid argument or out-of-range input (bad cell, negative speed, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke an operation precondition, e.g. serving an already served node.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Instance too large for an exhaustive method.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace uavdql
