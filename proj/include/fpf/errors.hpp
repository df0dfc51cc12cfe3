// Error types shared by the library. All are machine-distinguishable by type.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpf {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter field is non-finite or otherwise unusable as a number.
class MalformedParameterError : public Error {
  public:
    using Error::Error;
};

/// The ring equation has no positive root for the given parameters.
class NoEquilibriumError : public Error {
  public:
    using Error::Error;
};

/// A force direction is undefined because two points coincide.
class DegenerateDistanceError : public Error {
  public:
    using Error::Error;
};

/// A grid range is empty, inverted, or outside the validity region.
class MalformedRangeError : public Error {
  public:
    using Error::Error;
};

/// Rejection sampling could not place the requested points.
class InfeasibleSeedingError : public Error {
  public:
    using Error::Error;
};

/// The integration blew up (non-finite force or state).
class DivergenceError : public Error {
  public:
    DivergenceError(std::size_t step, const std::string& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

    std::size_t step() const { return step_; }

  private:
    std::size_t step_;
};

/// A robot id was requested that is not present in the trajectory.
class UnknownRobotError : public Error {
  public:
    using Error::Error;
};

}  // namespace fpf
