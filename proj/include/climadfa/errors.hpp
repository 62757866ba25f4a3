#pragma once

#include <stdexcept>
#include <string>

namespace climadfa {

//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Bad configuration or input data, detected before any simulation runs.
class ValidationError : public Error
{
  public:
    using Error::Error;
};

//! A required climate series is absent from the drawn ensemble member.
class MissingVariableError : public Error
{
  public:
    using Error::Error;
};

//! A hazard model references a covariate that was not supplied.
class MissingCovariateError : public Error
{
  public:
    using Error::Error;
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Design matrix is rank deficient or otherwise singular.
class SingularDesignError : public Error
{
  public:
    using Error::Error;
};

//! Iterative fit failed to converge.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

//! Numeric failure inside a simulated path.
class SimulationError : public Error
{
  public:
    using Error::Error;
};

}  // namespace climadfa
