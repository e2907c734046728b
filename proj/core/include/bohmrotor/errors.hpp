#pragma once

#include <stdexcept>
#include <string>

namespace bohmrotor {

/// Invalid grid, model, or experiment configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A value lies outside the band a grid or interval can represent.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// The wave field vanishes everywhere, so its phase is undefined.
class DegenerateFieldError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A trajectory interval does not fit the kick schedule.
class SchedulingError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// An observable cannot be formed from the data it was given.
class ObservableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace bohmrotor
