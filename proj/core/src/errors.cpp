#include "kbonacci/errors.hpp"

#include <utility>

namespace kstep {

OrderOutOfRangeError::OrderOutOfRangeError(long k)
    : Error("order k = " + std::to_string(k) + " is out of range (k >= 2 required)"), k_(k) {}

IndexOutOfRangeError::IndexOutOfRangeError(long k, long n)
    : Error("index n = " + std::to_string(n) + " is outside the domain n >= 2 - k = " +
            std::to_string(2 - k) + " for k = " + std::to_string(k)),
      k_(k),
      n_(n) {}

RootConvergenceError::RootConvergenceError(const std::string& what,
                                           std::vector<double> best_log2_residuals)
    : Error(what), residuals_(std::move(best_log2_residuals)) {}

void require_order(long k) {
  if (k < 2) throw OrderOutOfRangeError(k);
}

void require_index(long k, long n) {
  require_order(k);
  if (n < 2 - k) throw IndexOutOfRangeError(k, n);
}

void require_precision(long bits) {
  if (bits < 32) {
    throw PreconditionError("precision of " + std::to_string(bits) + " bits is below the 32-bit minimum");
  }
}

}  // namespace kstep
