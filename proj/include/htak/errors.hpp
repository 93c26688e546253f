#pragma once

#include <stdexcept>
#include <string>

namespace htak {

/// A required input (file, directory) is missing or unreadable.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input file is readable but its content is malformed.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed an argument outside the operation's domain.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace htak
