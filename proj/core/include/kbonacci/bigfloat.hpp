#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace kstep {

// Owning RAII handle around an mpfr_t. Every arithmetic call site passes its
// own rounding mode; nothing here touches MPFR's global default rounding.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(long value, mpfr_prec_t precision);
  BigFloat(const mpz_class& value, mpfr_prec_t precision, mpfr_rnd_t rnd);
  BigFloat(const mpq_class& value, mpfr_prec_t precision, mpfr_rnd_t rnd);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  // Parses a decimal literal, rounding in the given direction.
  static BigFloat parse(const std::string& text, mpfr_prec_t precision, mpfr_rnd_t rnd);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  // Fixed-point decimal, correctly rounded to nearest.
  std::string to_fixed(int decimals) const;
  // Scientific notation with `digits` significant digits, rounded away from
  // zero so that a printed radius never understates the stored one.
  std::string to_scientific(int digits) const;

  // Round-to-nearest integer floor(x + 1/2). Exact for ties by construction.
  mpz_class round_half_up() const;
  mpz_class floor() const;
  // The stored binary value as an exact rational.
  mpq_class to_rational() const;

  friend void swap(BigFloat& a, BigFloat& b) noexcept { mpfr_swap(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

inline int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }
inline int compare(const BigFloat& a, const mpq_class& b) { return mpfr_cmp_q(a.get(), b.get_mpq_t()); }
inline int compare(const BigFloat& a, long b) { return mpfr_cmp_si(a.get(), b); }

}  // namespace kstep
