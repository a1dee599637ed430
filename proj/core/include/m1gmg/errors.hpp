#pragma once

#include <stdexcept>
#include <string>

namespace m1gmg {

/// Invalid run configuration (bad key, bad value, impossible grid).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solver produced a state outside the admissible cone. For the explicit
/// solver this signals a CFL violation; for the implicit solvers it would
/// indicate a broken invariant and is always a hard error.
struct AdmissibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace m1gmg
