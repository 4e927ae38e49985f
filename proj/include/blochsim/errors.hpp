#pragma once

#include <stdexcept>
#include <string>

namespace blochsim {

// Invalid input, contract violation, non-state operator, bad file content.
// CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Work refused because it exceeds a configured cap (enumeration sizes etc).
// CLI exit code 3.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / parse failures. CLI exit code 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace blochsim
