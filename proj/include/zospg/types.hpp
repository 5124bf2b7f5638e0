#pragma once

#include <stdexcept>

#include <Eigen/Core>

namespace zospg {

using Vector = Eigen::VectorXd;

/// Invalid experiment or run configuration (bad field, inadmissible value).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An oracle query landed outside the objective's declared domain.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A run was stopped because it produced a non-finite value.
class RunAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zospg
