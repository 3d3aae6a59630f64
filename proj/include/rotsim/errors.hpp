#pragma once

#include <stdexcept>
#include <string>

namespace rotsim {

/// Invalid or inconsistent run configuration / specification input.
/// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (norm drift, non-convergence). CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation not defined for the requested inputs (e.g. a circular
/// polarization where only linear ones make sense).
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rotsim
