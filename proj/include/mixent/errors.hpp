#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mixent {

// Argument outside an operation's domain (negative squeeze, p > 1, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// (p, I) pair outside the region 1 - p < I <= 1, or an unreachable
// camouflage constraint.
class InfeasibleParameters : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fock cutoff too small for the requested squeeze parameter.
class TruncationError : public NumericalFailure {
public:
    TruncationError(const std::string& what, int required_cutoff)
        : NumericalFailure(what), required_cutoff_(required_cutoff) {}

    int required_cutoff() const noexcept { return required_cutoff_; }

private:
    int required_cutoff_;
};

// Two routes to the same number disagreed.
class InternalConsistencyError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class EmptySearchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidParameter(msg);
}

inline void require_squeeze(double r) {
    require(std::isfinite(r) && r >= 0.0, "squeeze parameter must be finite and >= 0, got " + std::to_string(r));
}

inline void require_probability(double p, const char* name = "p") {
    require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
            std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace detail
}  // namespace mixent
