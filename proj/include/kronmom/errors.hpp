#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kronmom {

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An exact integer count exceeded its accumulator.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// The lead-term equations have no real valued solution for the given counts.
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A fitting procedure produced no usable candidate.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kronmom
