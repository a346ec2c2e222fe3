#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

/// Argument outside the domain of a map (out-of-range r or theta, bad step size).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quantity left its validity range (q3 beyond the tubular-neighbourhood bound).
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

/// Invalid configuration: grid too small, dimension over the solver cap, bad key.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Two inputs that must describe the same problem do not.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed (non-Hermitian assembly, singular metric).
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace mobius
