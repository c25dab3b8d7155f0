#include "kbonacci/enclosure.hpp"

#include <algorithm>
#include <stdexcept>

namespace kstep {

namespace {

mpfr_prec_t wider(const RealEnclosure& a, const RealEnclosure& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace

RealEnclosure::RealEnclosure(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get()) || compare(lo_, hi_) > 0) {
    throw std::invalid_argument("enclosure requires lo <= hi");
  }
  // Keep both endpoints at one precision so precision_bits() is unambiguous.
  const mpfr_prec_t p = std::max(lo_.precision(), hi_.precision());
  if (lo_.precision() != p) mpfr_prec_round(lo_.get(), p, MPFR_RNDD);
  if (hi_.precision() != p) mpfr_prec_round(hi_.get(), p, MPFR_RNDU);
}

RealEnclosure RealEnclosure::point(long value, mpfr_prec_t precision) {
  BigFloat lo(precision), hi(precision);
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure RealEnclosure::point(const BigFloat& value) { return {value, value}; }

RealEnclosure RealEnclosure::of(const mpz_class& value, mpfr_prec_t precision) {
  return {BigFloat(value, precision, MPFR_RNDD), BigFloat(value, precision, MPFR_RNDU)};
}

RealEnclosure RealEnclosure::of(const mpq_class& value, mpfr_prec_t precision) {
  return {BigFloat(value, precision, MPFR_RNDD), BigFloat(value, precision, MPFR_RNDU)};
}

RealEnclosure RealEnclosure::sqrt_of(long value, mpfr_prec_t precision) {
  if (value < 0) throw std::domain_error("sqrt of a negative integer");
  BigFloat lo(precision), hi(precision);
  mpfr_sqrt_ui(lo.get(), static_cast<unsigned long>(value), MPFR_RNDD);
  mpfr_sqrt_ui(hi.get(), static_cast<unsigned long>(value), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

BigFloat RealEnclosure::width() const {
  BigFloat w(precision_bits());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

BigFloat RealEnclosure::midpoint() const {
  BigFloat m(precision_bits() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

BigFloat RealEnclosure::radius() const {
  const BigFloat m = midpoint();
  BigFloat up(precision_bits()), down(precision_bits());
  mpfr_sub(up.get(), hi_.get(), m.get(), MPFR_RNDU);
  mpfr_sub(down.get(), m.get(), lo_.get(), MPFR_RNDU);
  return compare(up, down) >= 0 ? up : down;
}

BigFloat RealEnclosure::magnitude() const {
  BigFloat a(precision_bits()), b(precision_bits());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
  mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
  return compare(a, b) >= 0 ? a : b;
}

bool RealEnclosure::contains(long value) const {
  return compare(lo_, value) <= 0 && compare(hi_, value) >= 0;
}

bool RealEnclosure::contains(const mpq_class& value) const {
  return compare(lo_, value) <= 0 && compare(hi_, value) >= 0;
}

bool RealEnclosure::contains(const RealEnclosure& inner) const {
  return compare(lo_, inner.lo_) <= 0 && compare(hi_, inner.hi_) >= 0;
}

bool RealEnclosure::strictly_above(const mpq_class& bound) const { return compare(lo_, bound) > 0; }

bool RealEnclosure::strictly_below(const mpq_class& bound) const { return compare(hi_, bound) < 0; }

bool RealEnclosure::strictly_inside(const mpq_class& lower, const mpq_class& upper) const {
  return strictly_above(lower) && strictly_below(upper);
}

std::optional<RealEnclosure> RealEnclosure::intersect(const RealEnclosure& other) const {
  const BigFloat& lo = compare(lo_, other.lo_) >= 0 ? lo_ : other.lo_;
  const BigFloat& hi = compare(hi_, other.hi_) <= 0 ? hi_ : other.hi_;
  if (compare(lo, hi) > 0) return std::nullopt;
  return RealEnclosure(lo, hi);
}

RealEnclosure RealEnclosure::operator-() const {
  BigFloat lo(precision_bits()), hi(precision_bits());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure RealEnclosure::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return -*this;
  return {BigFloat(0L, precision_bits()), magnitude()};
}

RealEnclosure RealEnclosure::reciprocal() const {
  if (contains_zero()) throw std::domain_error("reciprocal of an enclosure containing zero");
  BigFloat lo(precision_bits()), hi(precision_bits());
  mpfr_ui_div(lo.get(), 1, hi_.get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure RealEnclosure::pow(long n) const {
  const mpfr_prec_t p = precision_bits();
  if (n == 0) return point(1, p);
  if (n < 0) {
    if (contains_zero()) throw std::domain_error("negative power of an enclosure containing zero");
    return pow(-n).reciprocal();
  }
  BigFloat lo(p), hi(p);
  if (lo_.sign() >= 0) {
    mpfr_pow_si(lo.get(), lo_.get(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), hi_.get(), n, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  if (hi_.sign() <= 0) {
    const RealEnclosure r = (-*this).pow(n);
    return n % 2 == 0 ? r : -r;
  }
  // Straddles zero.
  if (n % 2 != 0) {
    mpfr_pow_si(lo.get(), lo_.get(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), hi_.get(), n, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  mpfr_pow_si(hi.get(), magnitude().get(), n, MPFR_RNDU);
  return {BigFloat(0L, p), std::move(hi)};
}

RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b) {
  const mpfr_prec_t p = wider(a, b);
  BigFloat lo(p), hi(p);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b) {
  const mpfr_prec_t p = wider(a, b);
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b) {
  const mpfr_prec_t p = wider(a, b);
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (const BigFloat* x : {&a.lo_, &a.hi_}) {
    for (const BigFloat* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || compare(t, lo) < 0) swap(lo, t);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || compare(t, hi) > 0) swap(hi, t);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b) {
  if (b.contains_zero()) throw std::domain_error("division by an enclosure containing zero");
  const mpfr_prec_t p = wider(a, b);
  BigFloat lo(p), hi(p), t(p);
  bool first = true;
  for (const BigFloat* x : {&a.lo_, &a.hi_}) {
    for (const BigFloat* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || compare(t, lo) < 0) swap(lo, t);
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || compare(t, hi) > 0) swap(hi, t);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator+(const RealEnclosure& a, long b) {
  BigFloat lo(a.precision_bits()), hi(a.precision_bits());
  mpfr_add_si(lo.get(), a.lo_.get(), b, MPFR_RNDD);
  mpfr_add_si(hi.get(), a.hi_.get(), b, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator-(const RealEnclosure& a, long b) {
  BigFloat lo(a.precision_bits()), hi(a.precision_bits());
  mpfr_sub_si(lo.get(), a.lo_.get(), b, MPFR_RNDD);
  mpfr_sub_si(hi.get(), a.hi_.get(), b, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator*(const RealEnclosure& a, long b) {
  BigFloat lo(a.precision_bits()), hi(a.precision_bits());
  if (b >= 0) {
    mpfr_mul_si(lo.get(), a.lo_.get(), b, MPFR_RNDD);
    mpfr_mul_si(hi.get(), a.hi_.get(), b, MPFR_RNDU);
  } else {
    mpfr_mul_si(lo.get(), a.hi_.get(), b, MPFR_RNDD);
    mpfr_mul_si(hi.get(), a.lo_.get(), b, MPFR_RNDU);
  }
  return {std::move(lo), std::move(hi)};
}

RealEnclosure operator-(const mpz_class& a, const RealEnclosure& b) {
  return RealEnclosure::of(a, b.precision_bits()) - b;
}

}  // namespace kstep
