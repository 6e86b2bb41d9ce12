#pragma once

#include <stdexcept>
#include <string>

namespace solenoid {

// Base class for everything thrown by this library.
// `kind` distinguishes configuration/usage mistakes (bad input, mismatched
// resolutions) from mathematical failures (non-convergence, violated
// preconditions discovered numerically); the CLI maps them to exit codes
// 1 and 2 respectively.
class Error : public std::runtime_error {
public:
    enum class Kind { Config, Math };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(Kind::Config, w) {}
};

struct InvalidSpec : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidPoint : ConfigError {
    using ConfigError::ConfigError;
};
struct EmptyWord : ConfigError {
    using ConfigError::ConfigError;
};
struct BranchOutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct ResolutionMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};
struct LevelOutOfRange : ConfigError {
    using ConfigError::ConfigError;
};
struct InvalidWord : ConfigError {
    using ConfigError::ConfigError;
};

struct MathError : Error {
    explicit MathError(const std::string& w) : Error(Kind::Math, w) {}
};

struct NoConvergence : MathError {
    NoConvergence(const std::string& w, int iterations, double last_change, double residual)
        : MathError(w), iterations(iterations), last_change(last_change), residual(residual) {}
    int iterations;
    double last_change;
    double residual;
};

struct ZeroWeight : MathError {
    using MathError::MathError;
};
struct NotPSD : MathError {
    using MathError::MathError;
};
struct DepthExhausted : MathError {
    using MathError::MathError;
};
struct NotHarmonic : MathError {
    using MathError::MathError;
};
struct DominationFailure : MathError {
    using MathError::MathError;
};
struct NotAnOrbit : MathError {
    using MathError::MathError;
};
struct ZeroMass : MathError {
    using MathError::MathError;
};
struct DeadEnd : MathError {
    using MathError::MathError;
};
struct NegativeDetail : MathError {
    using MathError::MathError;
};
struct QuadratureUnderresolved : MathError {
    using MathError::MathError;
};

} // namespace solenoid
