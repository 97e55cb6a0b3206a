#pragma once

#include <stdexcept>
#include <string>

namespace paramosc {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed config, parameters outside their domain,
/// a switching channel the regime does not have. The CLI maps these to exit 2.
class InputError : public Error {
public:
    using Error::Error;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

class MissingChannel : public InputError {
public:
    using InputError::InputError;
};

/// A numerical method could not deliver a trustworthy answer. CLI exit 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Kramers prefactor requested where a curvature is too close to zero.
class BifurcationProximity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SupportTooSmall : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepTooLarge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFiniteState : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NewtonFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BranchLost : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitWindowEmpty : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace paramosc
