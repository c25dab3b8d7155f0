#pragma once

#include <gmpxx.h>

#include <optional>

#include "kbonacci/bigfloat.hpp"

namespace kstep {

// Closed interval [lo, hi] guaranteed to contain a real value. All operations
// round lo toward -inf and hi toward +inf, so containment is preserved through
// every arithmetic step. The result precision of a binary operation is the
// larger of the operand precisions.
class RealEnclosure {
 public:
  RealEnclosure(BigFloat lo, BigFloat hi);

  static RealEnclosure point(long value, mpfr_prec_t precision);
  static RealEnclosure point(const BigFloat& value);
  static RealEnclosure of(const mpz_class& value, mpfr_prec_t precision);
  static RealEnclosure of(const mpq_class& value, mpfr_prec_t precision);
  // Tightest enclosure of sqrt(n) at the given precision.
  static RealEnclosure sqrt_of(long value, mpfr_prec_t precision);

  const BigFloat& lo() const noexcept { return lo_; }
  const BigFloat& hi() const noexcept { return hi_; }
  mpfr_prec_t precision_bits() const noexcept { return lo_.precision(); }

  BigFloat width() const;     // hi - lo, rounded up
  BigFloat midpoint() const;  // rounded to nearest
  BigFloat radius() const;    // max distance from midpoint() to an endpoint, rounded up
  BigFloat magnitude() const; // max |x| over the enclosure, exact

  bool contains(long value) const;
  bool contains(const mpq_class& value) const;
  bool contains(const RealEnclosure& inner) const;
  bool contains_zero() const { return contains(0L); }
  bool strictly_above(const mpq_class& bound) const;  // lo > bound
  bool strictly_below(const mpq_class& bound) const;  // hi < bound
  bool strictly_inside(const mpq_class& lower, const mpq_class& upper) const;

  std::optional<RealEnclosure> intersect(const RealEnclosure& other) const;

  RealEnclosure operator-() const;
  RealEnclosure abs() const;
  RealEnclosure reciprocal() const;  // throws std::domain_error when 0 is enclosed
  // x^n for any integer n. Negative n requires an enclosure excluding 0.
  RealEnclosure pow(long n) const;

  friend RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator+(const RealEnclosure& a, long b);
  friend RealEnclosure operator-(const RealEnclosure& a, long b);
  friend RealEnclosure operator*(const RealEnclosure& a, long b);
  friend RealEnclosure operator-(const mpz_class& a, const RealEnclosure& b);

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace kstep
