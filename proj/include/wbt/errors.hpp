#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wbt {

/// Input violated a documented precondition (e.g. vee() on a non-skew matrix).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The task Jacobian lost row rank; carries the singular values seen.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, std::vector<double> singular_values)
      : std::runtime_error(what), singular_values_(std::move(singular_values)) {}
  const std::vector<double>& singular_values() const { return singular_values_; }

 private:
  std::vector<double> singular_values_;
};

class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Mass-matrix solve failed during forward integration. Indicates a modelling bug.
class DynamicsError : public std::runtime_error {
 public:
  DynamicsError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wbt
