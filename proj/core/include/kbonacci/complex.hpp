#pragma once

#include <algorithm>

#include "kbonacci/bigfloat.hpp"

namespace kstep {

// Multiprecision complex number with round-to-nearest arithmetic. No
// enclosure guarantees; used for the non-dominant roots, which only serve
// as a moderate-precision cross-check.
struct ComplexFloat {
  BigFloat re;
  BigFloat im;

  explicit ComplexFloat(mpfr_prec_t precision) : re(precision), im(precision) {}
  ComplexFloat(BigFloat real, BigFloat imag) : re(std::move(real)), im(std::move(imag)) {}
  ComplexFloat(double real, double imag, mpfr_prec_t precision);

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

  BigFloat abs() const;
  ComplexFloat conj() const;
  ComplexFloat pow(long n) const;

  friend ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b);
  friend ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b);
  friend ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b);
  friend ComplexFloat operator/(const ComplexFloat& a, const ComplexFloat& b);
  friend ComplexFloat operator+(const ComplexFloat& a, long b);
  friend ComplexFloat operator-(const ComplexFloat& a, long b);
  friend ComplexFloat operator*(const ComplexFloat& a, long b);
};

}  // namespace kstep
