#pragma once

#include <stdexcept>
#include <string>

namespace treedist {

// Bad or ill-formed input (malformed files, broken invariants, preconditions).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration-based operation was asked to run past its size limit.
class ScaleGuardError : public std::runtime_error {
public:
    ScaleGuardError(const std::string& what, long long limit)
        : std::runtime_error(what), limit_(limit) {}
    long long limit() const { return limit_; }

private:
    long long limit_;
};

} // namespace treedist
