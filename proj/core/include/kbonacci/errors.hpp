#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kstep {

// Base for every failure raised by the library. Callers that only need to
// distinguish "library refused" from other exceptions can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented precondition (e.g. precision below 32 bits).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// k < 2.
class OrderOutOfRangeError : public Error {
 public:
  explicit OrderOutOfRangeError(long k);
  long order() const noexcept { return k_; }

 private:
  long k_;
};

// n < 2 - k: the sequence is not defined below its k - 1 leading zeros.
class IndexOutOfRangeError : public Error {
 public:
  IndexOutOfRangeError(long k, long n);
  long order() const noexcept { return k_; }
  long index() const noexcept { return n_; }

 private:
  long k_;
  long n_;
};

// The sign change of the auxiliary polynomial could not be certified.
// Indicates a broken internal invariant; never expected for valid k.
class RootIsolationError : public Error {
 public:
  using Error::Error;
};

class RootConvergenceError : public Error {
 public:
  RootConvergenceError(const std::string& what, std::vector<double> best_log2_residuals);
  // log2 of the best |p(z)| reached per non-dominant root.
  const std::vector<double>& best_log2_residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// The enclosure handed to m(x) touches its pole at 2 - 2/(k+1).
class PoleProximityError : public Error {
 public:
  using Error::Error;
};

// 2 z^k - (k+1) too close to zero for the Spickerman-Joyner coefficient.
class DegenerateDenominatorError : public Error {
 public:
  using Error::Error;
};

// Operation defined for a single order only (the k = 3 Spickerman form).
class WrongOrderError : public Error {
 public:
  using Error::Error;
};

// Certified rounding did not separate the value from a half-integer within
// the precision cap.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Error rows that are not a contiguous index run, or too short.
class MalformedRangeError : public Error {
 public:
  using Error::Error;
};

// Throws OrderOutOfRangeError when k < 2.
void require_order(long k);
// Throws IndexOutOfRangeError when n < 2 - k (after checking k).
void require_index(long k, long n);
// Throws PreconditionError when bits < 32.
void require_precision(long bits);

}  // namespace kstep
