#ifndef MDLGBG_ERRORS_HPP
#define MDLGBG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdlgbg {

// Input data violates a numeric precondition (non-finite values, empty matrix).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed CSV input; the message names the offending row and column.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inconsistent or unsupported run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mdlgbg

#endif  // MDLGBG_ERRORS_HPP
