#pragma once

#include <stdexcept>
#include <string>

namespace metawhit {

// Exception hierarchy shared by every module. The CLI maps these onto exit
// statuses (usage error, identity violation, internal assertion).

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IncompatibleModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidDatum : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a rational function is evaluated at one of its poles.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, int order)
      : std::domain_error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// An exact identity that was expected to hold did not.
class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(std::string identity, const std::string& witness)
      : std::runtime_error(identity + ": " + witness),
        identity_(std::move(identity)) {}
  const std::string& identity() const noexcept { return identity_; }

 private:
  std::string identity_;
};

}  // namespace metawhit
