// errors.hpp - exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace miseclab {

// Coincident coil centers, zero orbit radius, and similar unusable geometry.
struct degenerate_geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Singular or ill-conditioned network solve, residual blow-up.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown builtin scenario, unknown node id.
struct not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario file parse or validation failure.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing result files.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace miseclab
