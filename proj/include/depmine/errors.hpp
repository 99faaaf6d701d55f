#pragma once

#include <stdexcept>
#include <string>

namespace depmine {

/// Malformed input data: unreadable file, bad token, ragged row, non-binary cell.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid search or tool configuration: unknown measure, bad goal, bad flag combination.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A negative-dependency request against a measure defined only for positive dependencies.
class unsupported_polarity_error : public config_error {
public:
    explicit unsupported_polarity_error(const std::string& what) : config_error(what) {}
};

/// Unknown attribute name or id.
class lookup_error : public std::runtime_error {
public:
    explicit lookup_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace depmine
