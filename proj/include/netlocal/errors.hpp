#pragma once

#include <stdexcept>
#include <string>

namespace netlocal {

// Subsystem dimension lists, operator shapes, or permutations do not fit together.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured cap (joint dimension, strategy count) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, long long count)
        : std::runtime_error(what + " (count: " + std::to_string(count) + ")"), count_(count) {}

    long long count() const { return count_; }

private:
    long long count_;
};

}  // namespace netlocal
