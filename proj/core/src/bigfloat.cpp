#include "kbonacci/bigfloat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kstep {

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_z(value_, value.get_mpz_t(), rnd);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  BigFloat out(precision);
  if (mpfr_set_str(out.value_, text.c_str(), 10, rnd) != 0) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
  return out;
}

namespace {

std::string take(char* buffer) {
  std::string s(buffer);
  mpfr_free_str(buffer);
  return s;
}

}  // namespace

std::string BigFloat::to_fixed(int decimals) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*RNf", decimals, value_);
  return take(buffer);
}

std::string BigFloat::to_scientific(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*RYe", digits > 0 ? digits - 1 : 0, value_);
  return take(buffer);
}

mpz_class BigFloat::round_half_up() const {
  // Wide enough that x + 1/2 is exact whatever the exponent of x.
  mpfr_prec_t bits = precision() + 4;
  if (!mpfr_zero_p(value_)) bits += std::labs(mpfr_get_exp(value_));
  BigFloat shifted(bits);
  mpfr_add_d(shifted.value_, value_, 0.5, MPFR_RNDN);
  return shifted.floor();
}

mpz_class BigFloat::floor() const {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDD);
  return out;
}

mpq_class BigFloat::to_rational() const {
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

}  // namespace kstep
