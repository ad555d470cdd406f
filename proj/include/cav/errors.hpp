#pragma once

#include <stdexcept>
#include <string>

namespace cav {

// Base for everything this library throws. Subclasses map to the CLI's
// exit-code policy: InputError/ManifestError -> exit 2, the rest -> exit 1.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class IncompatibleAdapterError : public Error {
public:
  using Error::Error;
};

class GenerationError : public Error {
public:
  GenerationError(const std::string& what, double alpha)
      : Error(what), alpha_(alpha) {}
  double alpha() const { return alpha_; }

private:
  double alpha_;
};

class CacheError : public Error {
public:
  using Error::Error;
};

class EmptySupportError : public Error {
public:
  using Error::Error;
};

class TrackerError : public Error {
public:
  using Error::Error;
};

class ManifestError : public Error {
public:
  using Error::Error;
};

}  // namespace cav
