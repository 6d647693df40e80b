#pragma once

#include <stdexcept>
#include <string>

// Typed error hierarchy. Every failure the library signals derives from
// AhsError; the concrete type names the contract that was violated, so
// callers (and the CLI exit-code mapping) can dispatch on it.

namespace ahs {

class AhsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Program construction / validation.
class SpacingViolation : public AhsError { public: using AhsError::AhsError; };
class OutOfField : public AhsError { public: using AhsError::AhsError; };
class TooManyAtoms : public AhsError { public: using AhsError::AhsError; };
class WaveformMismatch : public AhsError { public: using AhsError::AhsError; };
class OutOfRange : public AhsError { public: using AhsError::AhsError; };

// Merging tenants.
class DriveMismatch : public AhsError { public: using AhsError::AhsError; };
class DurationMismatch : public AhsError { public: using AhsError::AhsError; };
class ShiftMismatch : public AhsError { public: using AhsError::AhsError; };

// Serialization.
class ParseError : public AhsError { public: using AhsError::AhsError; };

// Hamiltonian / evolution.
class DegenerateGeometry : public AhsError { public: using AhsError::AhsError; };
class DimensionMismatch : public AhsError { public: using AhsError::AhsError; };
class TooLarge : public AhsError { public: using AhsError::AhsError; };
class NormDrift : public AhsError { public: using AhsError::AhsError; };

// Fidelity / noise / placement.
class LengthMismatch : public AhsError { public: using AhsError::AhsError; };
class JitterTooLarge : public AhsError { public: using AhsError::AhsError; };
class PlacementExhausted : public AhsError { public: using AhsError::AhsError; };

// Experiment configuration.
class ConfigError : public AhsError { public: using AhsError::AhsError; };

}  // namespace ahs
