#pragma once

#include <stdexcept>
#include <string>

namespace coverplan {

// Recoverable failures raised by the planning library. The CLI maps these
// onto process exit codes (domain errors -> 3, exceeded caps -> 4).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class InstanceTooSmall : public DomainError {
public:
  using DomainError::DomainError;
};

class InvalidParameter : public DomainError {
public:
  using DomainError::DomainError;
};

class SideUncoverable : public DomainError {
public:
  using DomainError::DomainError;
};

class GraphDisconnected : public DomainError {
public:
  using DomainError::DomainError;
};

class GenerationFailed : public DomainError {
public:
  using DomainError::DomainError;
};

class NonTerminating : public DomainError {
public:
  using DomainError::DomainError;
};

// Resource caps (enumeration budgets, model size).
class CapsError : public DomainError {
public:
  using DomainError::DomainError;
};

class InstanceTooLarge : public CapsError {
public:
  using CapsError::CapsError;
};

class ModelTooLarge : public CapsError {
public:
  using CapsError::CapsError;
};

class ParseError : public DomainError {
public:
  ParseError(const std::string& what, int line)
      : DomainError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace coverplan
