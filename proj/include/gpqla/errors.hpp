#pragma once

#include <stdexcept>
#include <string>

namespace gpqla {

// Invalid parameters or configuration. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values or other breakdown during evolution. Exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite potential at a lattice site.
class NonFiniteSiteError : public NumericalError {
 public:
  NonFiniteSiteError(int x, int y, const std::string& what)
      : NumericalError(what), x_(x), y_(y) {}
  int x() const { return x_; }
  int y() const { return y_; }

 private:
  int x_;
  int y_;
};

// File system or format failures. Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpqla
