#pragma once

#include <stdexcept>
#include <string>

namespace qtoric {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vector or point has the wrong length for the object it is paired with.
struct DimensionMismatch : Error { using Error::Error; };

/// The halfspace intersection has a recession direction (is not compact).
struct Unbounded : Error { using Error::Error; };

/// The halfspace intersection is empty or has empty interior.
struct Degenerate : Error { using Error::Error; };

/// An integer matrix expected to have full row rank does not.
struct RankDeficient : Error { using Error::Error; };

/// Ambient dimension exceeds the configured enumeration bound.
struct AmbientTooLarge : Error { using Error::Error; };

/// Matrix columns expected to be linearly independent are not.
struct DependentColumns : Error { using Error::Error; };

/// A basis matrix violates the reduced-form conditions.
struct NotReduced : Error { using Error::Error; };

/// A basis matrix contains the forbidden two-row sign pattern.
struct PatternPresent : Error { using Error::Error; };

/// The combined action table cannot be synthesized for this input.
struct Unsupported : Error { using Error::Error; };

/// Inversion of the zero quaternion.
struct ZeroInverse : Error { using Error::Error; };

/// A point expected on a sphere of given radius is not on it.
struct NotOnSphere : Error { using Error::Error; };

/// A point expected inside a polytope violates one of its halfspaces.
struct OutsidePolytope : Error { using Error::Error; };

/// A sample count outside the accepted range was requested.
struct InvalidSampleCount : Error { using Error::Error; };

/// A quaternion tuple does not lie on the relevant level set.
struct NotOnLevelSet : Error { using Error::Error; };

/// A linear system that should be consistent is not, beyond tolerance.
struct InconsistentSystem : Error { using Error::Error; };

/// A homogeneous coordinate block is entirely zero.
struct ZeroHomogeneousVector : Error { using Error::Error; };

/// A cutting hyperplane that does not properly cut the polytope.
struct ImproperCut : Error { using Error::Error; };

/// The polytope produced by a cut fails Delzant verification.
struct NotDelzantAfterCut : Error { using Error::Error; };

/// A level value too close to a critical value of the sampled function.
struct NonRegularValue : Error { using Error::Error; };

/// Malformed input file (JSON, action table, CSV).
struct ParseError : Error { using Error::Error; };

/// Serialized data carries an unsupported schema version.
struct SchemaVersionMismatch : Error { using Error::Error; };

}  // namespace qtoric
