#pragma once

#include <stdexcept>
#include <string>

namespace rmes {

// Base class for numerical failures raised by the library.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature refinement hit its node cap before meeting tolerance.  Usually
// means a pole sits on or too near the contour, or the tolerance is below
// what double precision can deliver for the given integrand.
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

// An infinite contour's integrand failed to fall below threshold within the
// configured extent cap.
struct NoDecay : NumericalError {
    using NumericalError::NumericalError;
};

// No admissible, non-intersecting contour placement exists for the requested
// parameters.
struct ContourClash : NumericalError {
    using NumericalError::NumericalError;
};

struct FitUnstable : NumericalError {
    using NumericalError::NumericalError;
};

struct InvalidSpectrum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateSpikes : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EmptyRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace rmes
