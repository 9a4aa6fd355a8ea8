#pragma once

#include <stdexcept>
#include <string>

namespace vibmode {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unphysical parameters: (1 +/- x_f)(1 +/- x_g) <= 0.
struct DegenerateFrequency : Error {
    using Error::Error;
};

// Kinetic matrix element G(t) <= 0.
struct NonPositiveKinetic : Error {
    using Error::Error;
};

// Adaptive step shrank below the representable minimum, or alpha hit the
// lower-bound guard; signals stiffness or a modeling error.
struct StepSizeUnderflow : Error {
    using Error::Error;
};

// Trajectories with different time grids were combined.
struct MisalignedSeries : Error {
    using Error::Error;
};

// Wavefunction grid spans fewer than 6 position deviations.
struct GridTooNarrow : Error {
    using Error::Error;
};

// Config or molecule file parse/validation failure.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace vibmode
