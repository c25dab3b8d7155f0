#include "kbonacci/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace kstep {

namespace {

mpfr_prec_t wider(const ComplexFloat& a, const ComplexFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

ComplexFloat::ComplexFloat(double real, double imag, mpfr_prec_t precision)
    : re(precision), im(precision) {
  mpfr_set_d(re.get(), real, MPFR_RNDN);
  mpfr_set_d(im.get(), imag, MPFR_RNDN);
}

BigFloat ComplexFloat::abs() const {
  BigFloat out(precision());
  mpfr_hypot(out.get(), re.get(), im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat ComplexFloat::conj() const {
  ComplexFloat out(*this);
  mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat ComplexFloat::pow(long n) const {
  if (n < 0) return ComplexFloat(BigFloat(1L, precision()), BigFloat(precision())) / pow(-n);
  ComplexFloat result(BigFloat(1L, precision()), BigFloat(precision()));
  ComplexFloat base(*this);
  for (unsigned long e = static_cast<unsigned long>(n); e != 0; e >>= 1) {
    if (e & 1UL) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b) {
  ComplexFloat out(wider(a, b));
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b) {
  ComplexFloat out(wider(a, b));
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b) {
  const mpfr_prec_t p = wider(a, b);
  ComplexFloat out(p);
  // fmms/fmma keep each component to a single rounding.
  mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  return out;
}

ComplexFloat operator/(const ComplexFloat& a, const ComplexFloat& b) {
  const mpfr_prec_t p = wider(a, b) + 16;
  BigFloat denom(p);
  mpfr_fmma(denom.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  if (denom.is_zero()) throw std::domain_error("complex division by zero");
  ComplexFloat out(p);
  mpfr_fmma(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(out.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), out.re.get(), denom.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), denom.get(), MPFR_RNDN);
  mpfr_prec_round(out.re.get(), wider(a, b), MPFR_RNDN);
  mpfr_prec_round(out.im.get(), wider(a, b), MPFR_RNDN);
  return out;
}

ComplexFloat operator+(const ComplexFloat& a, long b) {
  ComplexFloat out(a);
  mpfr_add_si(out.re.get(), a.re.get(), b, MPFR_RNDN);
  return out;
}

ComplexFloat operator-(const ComplexFloat& a, long b) {
  ComplexFloat out(a);
  mpfr_sub_si(out.re.get(), a.re.get(), b, MPFR_RNDN);
  return out;
}

ComplexFloat operator*(const ComplexFloat& a, long b) {
  ComplexFloat out(a);
  mpfr_mul_si(out.re.get(), a.re.get(), b, MPFR_RNDN);
  mpfr_mul_si(out.im.get(), a.im.get(), b, MPFR_RNDN);
  return out;
}

}  // namespace kstep
