#pragma once

#include <stdexcept>
#include <string>

namespace troupes {

/// Thrown when an input exceeds a documented engine cap.
class resource_limit_error : public std::runtime_error {
public:
    resource_limit_error(const std::string& cap_name, long long cap_value,
                         long long requested)
        : std::runtime_error("resource limit exceeded: cap '" + cap_name +
                             "' is " + std::to_string(cap_value) +
                             ", requested " + std::to_string(requested)),
          cap_name_(cap_name), cap_value_(cap_value), requested_(requested) {}

    const std::string& cap_name() const { return cap_name_; }
    long long cap_value() const { return cap_value_; }
    long long requested() const { return requested_; }

private:
    std::string cap_name_;
    long long cap_value_;
    long long requested_;
};

/// Thrown for requests that are out of scope by design (e.g. an operation
/// the underlying theory does not cover), as opposed to malformed input.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what)
        : std::runtime_error(what) {}
};

inline void check_cap(const char* cap_name, long long cap_value, long long requested) {
    if (requested > cap_value)
        throw resource_limit_error(cap_name, cap_value, requested);
}

}  // namespace troupes
