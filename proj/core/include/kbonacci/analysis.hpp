#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "kbonacci/bigfloat.hpp"
#include "kbonacci/enclosure.hpp"

namespace kstep {

// E_n = F_n - m(alpha) alpha^(n-1) with its pieces.
struct ErrorRow {
  long n = 0;
  mpz_class exact;
  RealEnclosure approx;
  RealEnclosure error;
};

// Rows for n_lo..n_hi, each with |E_n| < 1/2 certified. `precision_bits` is
// the absolute accuracy target for every row; the alpha enclosure is shared
// and computed at precision_bits + n_hi (+ guard) bits, escalated until every
// row certifies.
std::vector<ErrorRow> error_table(long k, long n_lo, long n_hi, long precision_bits);

struct RecurrenceResidual {
  long n = 0;
  RealEnclosure residual;
};

// E_n - (E_{n-1} + ... + E_{n-k}) for every n >= 2 with a full window in
// `rows`. Rows must be contiguous and longer than k.
std::vector<RecurrenceResidual> check_error_recurrence(const std::vector<ErrorRow>& rows, long k);

// E_{n+1} - (2 E_n - E_{n-k}) for every n >= 2 where all three rows exist.
std::vector<RecurrenceResidual> check_two_step_identity(const std::vector<ErrorRow>& rows, long k);

struct MPropertyReport {
  long k = 0;
  long samples = 0;
  bool one_at_left_end = false;   // m(2 - 1/k) == 1, rational
  bool half_at_two = false;       // m(2) == 1/2, rational
  long decrease_violations = 0;   // grid neighbours not certified strictly decreasing
  long reciprocal_violations = 0; // interior grid points without m(x) > 1/x certified
  std::vector<mpq_class> intersections;  // rational roots of 1/x = m(x)
  bool intersections_at_two_and_k = false;

  bool all_passed() const {
    return one_at_left_end && half_at_two && decrease_violations == 0 && reciprocal_violations == 0 &&
           intersections_at_two_and_k;
  }
};

// Checks the m(x) properties on an evenly spaced rational grid of `samples`
// points over [2 - 1/k, 2] (enclosures at `precision_bits`), plus the exact
// rational identities.
MPropertyReport check_m_properties(long k, long samples, long precision_bits = 128);

// Does Round(coefficient * base^(n + exponent_offset)) reproduce target[n - n_start]?
struct ThresholdProblem {
  BigFloat coefficient;
  BigFloat base;
  std::vector<mpz_class> target;
  long n_start = 0;
  long exponent_offset = 0;
};

struct ThresholdReport {
  long n_start = 0;
  long exponent_offset = 0;
  std::vector<mpz_class> target;
  std::vector<mpz_class> rounded;
  // Smallest n from which every tested index matches; absent when the last
  // tested index already fails.
  std::optional<long> threshold;
  long verified_up_to = 0;  // last tested index

  bool matches(long n) const { return rounded[static_cast<std::size_t>(n - n_start)] == target[static_cast<std::size_t>(n - n_start)]; }
};

ThresholdReport rounding_threshold(const BigFloat& coefficient, const BigFloat& base,
                                   const std::vector<mpz_class>& target, long n_start, long exponent_offset);
ThresholdReport rounding_threshold(const ThresholdProblem& problem);

// 10, 10, 20, 30, 50, ... against (10/sqrt5) phi^n, for n = 1..n_max.
ThresholdProblem scaled_fibonacci_problem(long n_max);
// G_n = 2 G_{n-1} + 4 G_{n-2} = 1, 2, 8, 24, 80, ... against (1+sqrt5)^n / (2 sqrt5), n = 1..n_max.
ThresholdProblem gn_problem(long n_max);
// F_n against m(phi) phi^(n-1), n = 0..n_max.
ThresholdProblem fibonacci_problem(long n_max);

}  // namespace kstep
