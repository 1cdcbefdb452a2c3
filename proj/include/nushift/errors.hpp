#pragma once

#include <stdexcept>
#include <string>

namespace nushift {

/// Base class for all library errors. Subtypes carry the failure site in
/// their name so callers can map them to exit codes without string matching.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- field / map construction --------------------------------------------

class DegeneratePerturbation : public Error { using Error::Error; };
class InteriorZero            : public Error { using Error::Error; };
class EndpointMismatch        : public Error { using Error::Error; };
class OutOfDomain             : public Error { using Error::Error; };
class AmplitudeTooLarge       : public Error { using Error::Error; };
class InvalidDelta            : public Error { using Error::Error; };

// -- iteration / convergence ----------------------------------------------

class NoConvergence       : public Error { using Error::Error; };
class TailStall           : public Error { using Error::Error; };
class NoDecay             : public Error { using Error::Error; };
class TrapezoidViolation  : public Error { using Error::Error; };
class SolvabilityRequired : public Error { using Error::Error; };
class ToleranceUnreachable: public Error { using Error::Error; };
class OrbitExhausted      : public Error { using Error::Error; };

// -- jets -------------------------------------------------------------------

class OrderUnsupported    : public Error { using Error::Error; };
class ContractionNotFound : public Error { using Error::Error; };
class GridTooCoarse       : public Error { using Error::Error; };

// -- cli ----------------------------------------------------------------------

class UnsupportedField : public Error { using Error::Error; };
class ConfigError      : public Error { using Error::Error; };

} // namespace nushift
