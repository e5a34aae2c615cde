#pragma once

#include <stdexcept>
#include <string>

namespace ppn {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution or model parameter; the message names the field.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed or non-finite input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Parameter state that cannot be evaluated (e.g. non-positive variance).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Components wired together inconsistently (e.g. draws from the wrong model).
class WiringError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a check or study, tagged with the model and stage. The
/// original exception is nested (std::rethrow_if_nested recovers it).
class StageError : public Error {
 public:
  StageError(std::string model, std::string stage, const std::string& what)
      : Error(model + " [" + stage + "]: " + what), model_(std::move(model)), stage_(std::move(stage)) {}
  [[nodiscard]] const std::string& model() const { return model_; }
  [[nodiscard]] const std::string& stage() const { return stage_; }

 private:
  std::string model_;
  std::string stage_;
};

}  // namespace ppn
