#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace weakcast {

/// Bad parameters: levels out of range, invalid schedules, malformed configs.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad data handed to an operation: empty segments, non-finite values,
/// mismatched alphabets, paths that are too short.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined requests, e.g. a zero-probability pattern.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedSourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PositivityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The recurrence search ran off the end of the path before collecting
/// the requested number of samples.
class InsufficientDataError : public std::runtime_error {
public:
    InsufficientDataError(const std::string& what, std::size_t achieved, std::size_t requested)
        : std::runtime_error(what), achieved_(achieved), requested_(requested) {}

    std::size_t achieved() const noexcept { return achieved_; }
    std::size_t requested() const noexcept { return requested_; }

private:
    std::size_t achieved_;
    std::size_t requested_;
};

}  // namespace weakcast
