#ifndef CECH_ERRORS_HPP
#define CECH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cech {

/** Malformed or inconsistent input: bad group parameters, covers that do not
 *  cover, tables on the wrong domain, unknown point references, and so on.
 *  The command-line driver maps this to exit code 1. */
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/** A postcondition the library guarantees internally was violated (for
 *  example a cycle sum that should have been an integer is not). Indicates
 *  numerically hostile input or a bug, never a routine obstruction. */
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cech

#endif // CECH_ERRORS_HPP
