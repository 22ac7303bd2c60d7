#ifndef EQUILOC_ERRORS_HPP
#define EQUILOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace equiloc {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input (bad problem file, mismatched lattices,
// non-homogeneous ideals, ...).  CLI exit code 1.
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// A configured resource budget was exceeded (Groebner step cap).  The
// computation was aborted, never answered incorrectly.  CLI exit code 2.
struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error(msg) {}
};

// An internal invariant failed.  CLI exit code 3.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace equiloc

#endif
