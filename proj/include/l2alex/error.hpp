#pragma once

#include <stdexcept>
#include <string>

namespace l2alex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user data (dimension mismatch, bad parameter).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numeric procedure ran out of its evaluation budget before reaching the
/// requested tolerance. Carries the best estimate it had.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double best_estimate, double achieved)
      : Error(what), best_estimate_(best_estimate), achieved_(achieved) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double best_estimate_;
  double achieved_;
};

/// Two weight classes are indistinguishable within the tie tolerance, or a
/// computation hit a degenerate configuration (zero function, zero slice).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace l2alex
