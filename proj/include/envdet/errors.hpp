#pragma once

#include <stdexcept>
#include <string>

namespace envdet {

/// Argument outside the domain of a formula (maps to CLI exit code 2).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Quadrature failed to reach its tolerance (maps to CLI exit code 3).
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Output could not be written (maps to CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace envdet
