#pragma once

#include <stdexcept>
#include <string>

namespace swc {

/// Invalid chart, preset, or run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field violates a numerical precondition (non-SPD metric, nonpositive factor).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its mathematical domain (t <= 0, wrong verdict).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Infeasible construction parameters (bump profile, ball layout).
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swc
