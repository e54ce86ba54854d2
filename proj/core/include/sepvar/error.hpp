#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepvar {

/// Raised when an argument violates an operation's precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a generic random construction keeps failing its predicates.
class ResamplingError : public std::runtime_error {
public:
    ResamplingError(const std::string& what, std::uint64_t seed)
        : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace sepvar
