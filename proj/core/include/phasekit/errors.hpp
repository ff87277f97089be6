#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace phasekit {

/// Base class for all library errors.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

/// The numerical range of the matrix contains the origin, so no phases exist.
/// Carries the offending frequency when raised during a system-level sweep.
class NotCramped : public Error {
   public:
    explicit NotCramped(const std::string& what,
                        std::optional<double> witness = std::nullopt)
        : Error(what), witness_frequency(witness) {}
    std::optional<double> witness_frequency;
};

class NumericallySingular : public Error {
   public:
    using Error::Error;
};

class SyntaxError : public Error {
   public:
    SyntaxError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}
    int line;
    int column;
};

class NonProperEntry : public Error {
   public:
    using Error::Error;
};

class NonSquare : public Error {
   public:
    using Error::Error;
};

class ToleranceNotMet : public Error {
   public:
    using Error::Error;
};

class ResonantFrequency : public Error {
   public:
    explicit ResonantFrequency(const std::string& what, double omega)
        : Error(what), omega(omega) {}
    double omega;
};

class PoleHit : public Error {
   public:
    using Error::Error;
};

class Unstable : public Error {
   public:
    using Error::Error;
};

class IllPosed : public Error {
   public:
    using Error::Error;
};

class ImaginaryAxisEigenvalue : public Error {
   public:
    using Error::Error;
};

class AlphaOutOfRange : public Error {
   public:
    using Error::Error;
};

}  // namespace phasekit
