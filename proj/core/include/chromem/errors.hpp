#pragma once

#include <stdexcept>
#include <string>

namespace chromem {

// Malformed or inconsistent user input (unknown color, bad JSON, violated precondition).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An enumeration or search exceeded its configured cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operation not defined for the given kind of condition.
class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A computed structure violated an invariant it must satisfy by construction.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A pipeline stage refused to continue; carries the stage name.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

}  // namespace chromem
