#pragma once

#include <stdexcept>
#include <string>

namespace wendy {

/// Bad configuration (grid too small for the requested supports, coinciding
/// centers, invalid flag combinations).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A feature or Jacobian produced a non-finite value; carries row/feature info.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trajectory left the finite range during integration.
struct DivergenceError : std::runtime_error {
    DivergenceError(const std::string& what, double when)
        : std::runtime_error(what), time(when) {}
    double time;
};

/// G lost column rank; carries the trailing singular values.
struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Covariance factorization failed; carries the smallest eigenvalue.
struct FactorizationError : std::runtime_error {
    FactorizationError(const std::string& what, double eig)
        : std::runtime_error(what), smallest_eigenvalue(eig) {}
    double smallest_eigenvalue;
};

}  // namespace wendy
