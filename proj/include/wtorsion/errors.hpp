#pragma once

#include <stdexcept>
#include <string>

namespace wtorsion {

/// Input that cannot be interpreted at all (bad syntax, wrong shape).
/// Maps to CLI exit code 2.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Well-formed input rejected on mathematical grounds. Maps to exit code 1.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAUnit : MathError { using MathError::MathError; };
struct NotInKernel : MathError { using MathError::MathError; };
struct UnsupportedRing : MathError { using MathError::MathError; };
struct NotContractible : MathError { using MathError::MathError; };
struct ConstructionFailed : MathError { using MathError::MathError; };
struct IncompatibleRings : MathError { using MathError::MathError; };
struct DimensionMismatch : MathError { using MathError::MathError; };
struct NonIntegralHalf : MathError { using MathError::MathError; };
struct NotConnected : MathError { using MathError::MathError; };
struct UnknownEntry : MathError { using MathError::MathError; };
/// Chain-level identity violated (d^2, chain map, homotopy, symmetry).
struct InvalidComplex : MathError { using MathError::MathError; };

}  // namespace wtorsion
