#ifndef WDCS_ERRORS_HPP_
#define WDCS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace wdcs {

// Problems with input data or I/O: missing files, unreadable rows in strict
// mode, exhausted temp space. CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with the configuration: missing required header columns, bad flag
// values, malformed mapping files. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wdcs

#endif  // WDCS_ERRORS_HPP_
