#pragma once

#include <stdexcept>
#include <string>

namespace uds {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document (XML, catalog file, config value).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Dependency graph contains a cycle.
class CycleError : public Error {
public:
    using Error::Error;
};

/// A dependency or lookup names an id that does not exist.
class ReferenceError : public Error {
public:
    using Error::Error;
};

/// Arguments or state violate a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A scheduling decision violated the plan constraints.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Simulated time exceeded the configured cap (likely livelock).
class WatchdogError : public Error {
public:
    using Error::Error;
};

}  // namespace uds
