#ifndef QBOUNCE_ERRORS_HPP
#define QBOUNCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbounce {

// Bad inputs: violated preconditions, malformed files, inconsistent configs.
// The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures of the numerics themselves (non-convergence, resolution too
// coarse, broken post-conditions).  The CLI maps these to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qbounce

#endif
