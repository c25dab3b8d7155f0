#include "kbonacci/binet.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "kbonacci/errors.hpp"

namespace kstep {

const char* to_string(CoefficientForm form) {
  switch (form) {
    case CoefficientForm::m_function:
      return "m_function";
    case CoefficientForm::spickerman_joyner:
      return "spickerman_joyner";
    case CoefficientForm::spickerman_k3:
      return "spickerman_k3";
  }
  return "unknown";
}

namespace {

RealEnclosure m_denominator(long k, const RealEnclosure& x) { return (x - 2) * (k + 1) + 2; }

// m evaluated on a single point enclosure.
RealEnclosure m_at(long k, const RealEnclosure& x) {
  const RealEnclosure den = m_denominator(k, x);
  if (den.contains_zero()) {
    throw PoleProximityError("m(x) enclosure touches the pole at 2 - 2/(k+1) for k = " + std::to_string(k));
  }
  return (x - 1) / den;
}

// Newton distance estimate |p(z)| / |p'(z)| for an approximate root.
BigFloat root_error(long k, const ApproxRoot& root) {
  const CharPoly poly = char_poly(k);
  ComplexFloat value(root.value.precision()), slope(root.value.precision());
  poly.evaluate(root.value, value, slope);
  BigFloat out = slope.abs();
  mpfr_div(out.get(), root.residual_bound.get(), out.get(), MPFR_RNDU);
  return out;
}

BigFloat times(const BigFloat& a, const BigFloat& b) {
  BigFloat out(std::max(a.precision(), b.precision()));
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

long bit_length(long v) { return static_cast<long>(std::bit_width(static_cast<unsigned long>(std::labs(v)))); }

}  // namespace

RealEnclosure coefficient_m(long k, const RealEnclosure& x) {
  require_order(k);
  if (m_denominator(k, x).contains_zero()) {
    throw PoleProximityError("m(x) enclosure touches the pole at 2 - 2/(k+1) for k = " + std::to_string(k));
  }
  // m is a decreasing hyperbola branch on either side of the pole, so the
  // image of [lo, hi] is [m(hi), m(lo)].
  const RealEnclosure at_hi = m_at(k, RealEnclosure::point(x.hi()));
  const RealEnclosure at_lo = m_at(k, RealEnclosure::point(x.lo()));
  return {at_hi.lo(), at_lo.hi()};
}

ComplexApprox coefficient_m(long k, const ApproxRoot& root) {
  require_order(k);
  const ComplexFloat& z = root.value;
  const ComplexFloat den = z * (k + 1) - 2 * k;
  const ComplexFloat value = (z - 1) / den;
  // m'(z) = (1 - k) / den^2
  BigFloat slope = den.abs();
  mpfr_sqr(slope.get(), slope.get(), MPFR_RNDD);
  mpfr_si_div(slope.get(), k - 1, slope.get(), MPFR_RNDU);
  return {value, times(slope, root_error(k, root))};
}

ComplexApprox coefficient_sj(long k, const ApproxRoot& root) {
  require_order(k);
  const ComplexFloat& z = root.value;
  const mpfr_prec_t bits = z.precision();
  const ComplexFloat zk = z.pow(k);
  const ComplexFloat den = zk * 2 - (k + 1);

  BigFloat tolerance(64);
  mpfr_set_si_2exp(tolerance.get(), 1, -(bits / 2), MPFR_RNDN);
  if (compare(den.abs(), tolerance) < 0) {
    throw DegenerateDenominatorError("2 z^k - (k+1) vanishes to working precision for k = " + std::to_string(k));
  }
  const ComplexFloat num = zk * z - zk;
  const ComplexFloat value = num / den;

  // d/dz of u/v with u = z^(k+1) - z^k, v = 2 z^k - (k+1).
  const ComplexFloat zk1 = z.pow(k - 1);
  const ComplexFloat du = zk * (k + 1) - zk1 * k;
  const ComplexFloat dv = zk1 * (2 * k);
  const ComplexFloat slope = (du * den - num * dv) / (den * den);
  return {value, times(slope.abs(), root_error(k, root))};
}

RealEnclosure coefficient_sj(long k, const RealEnclosure& x) {
  require_order(k);
  const RealEnclosure xk = x.pow(k);
  const RealEnclosure den = xk * 2 - (k + 1);
  if (den.contains_zero()) {
    throw DegenerateDenominatorError("2 x^k - (k+1) encloses zero for k = " + std::to_string(k));
  }
  return (xk * x - xk) / den;
}

RealEnclosure coefficient_spickerman_k3(const ComplexRootSet& roots) {
  if (roots.k != 3 || roots.others.size() != 2) {
    throw WrongOrderError("the Spickerman coefficient is defined for k = 3 only (got k = " +
                          std::to_string(roots.k) + ")");
  }
  const ApproxRoot& sigma = roots.others[0];
  const ApproxRoot& sigma_bar = roots.others[1];
  const mpfr_prec_t bits = sigma.value.precision();

  // Imaginary part of (alpha - sigma)(alpha - conj sigma) must cancel.
  const ComplexFloat a(roots.dominant.midpoint(), BigFloat(bits));
  const ComplexFloat product = (a - sigma.value) * (a - sigma_bar.value);
  BigFloat tolerance(64);
  mpfr_set_si_2exp(tolerance.get(), 1, -(roots.precision_bits / 2), MPFR_RNDN);
  BigFloat imag = product.im;
  mpfr_abs(imag.get(), imag.get(), MPFR_RNDU);
  if (compare(imag, tolerance) >= 0) throw Error("complex roots of the cubic are not a conjugate pair");

  // Widen sigma by its Newton error estimate (plus a rounding allowance), then
  // evaluate alpha^2 / ((alpha - Re sigma)^2 + (Im sigma)^2).
  BigFloat radius = root_error(3, sigma);
  BigFloat ulp(64);
  mpfr_set_si_2exp(ulp.get(), 1, -(bits - 8), MPFR_RNDU);
  mpfr_add(radius.get(), radius.get(), ulp.get(), MPFR_RNDU);
  auto widen = [&](const BigFloat& c) {
    BigFloat lo(bits), hi(bits);
    mpfr_sub(lo.get(), c.get(), radius.get(), MPFR_RNDD);
    mpfr_add(hi.get(), c.get(), radius.get(), MPFR_RNDU);
    return RealEnclosure(std::move(lo), std::move(hi));
  };
  const RealEnclosure re = widen(sigma.value.re);
  const RealEnclosure im = widen(sigma.value.im);
  const RealEnclosure& alpha = roots.dominant;
  const RealEnclosure gap = alpha - re;
  return alpha.pow(2) / (gap.pow(2) + im.pow(2));
}

CoefficientValue dominant_coefficient(long k, CoefficientForm form, long precision_bits) {
  RealEnclosure alpha = dominant_root(k, precision_bits);
  switch (form) {
    case CoefficientForm::m_function: {
      RealEnclosure value = coefficient_m(k, alpha);
      return {k, form, std::move(value), std::move(alpha)};
    }
    case CoefficientForm::spickerman_joyner: {
      RealEnclosure value = coefficient_sj(k, alpha);
      return {k, form, std::move(value), std::move(alpha)};
    }
    case CoefficientForm::spickerman_k3: {
      if (k != 3) throw WrongOrderError("the Spickerman coefficient is defined for k = 3 only");
      ComplexRootSet roots = all_roots(k, precision_bits);
      RealEnclosure value = coefficient_spickerman_k3(roots);
      return {k, form, std::move(value), std::move(roots.dominant)};
    }
  }
  throw std::invalid_argument("unknown coefficient form");
}

BinetSum binet_full(long k, long n, long precision_bits) {
  require_index(k, n);
  const ComplexRootSet roots = all_roots(k, precision_bits);
  const mpfr_prec_t bits = precision_bits + 64;

  ComplexFloat sum(bits);
  BigFloat error(64);
  auto accumulate = [&](const ApproxRoot& root) {
    const ComplexApprox coefficient = coefficient_m(k, root);
    const ComplexFloat power = root.value.pow(n - 1);
    sum = sum + coefficient.value * power;
    // d/dz [m(z) z^(n-1)] ~ m'(z) z^(n-1) + m(z) (n-1) z^(n-2); bound each piece.
    BigFloat z_abs = root.value.abs();
    BigFloat term = times(coefficient.error_bound, power.abs());
    BigFloat chain = times(coefficient.value.abs(), power.abs());
    mpfr_mul_ui(chain.get(), chain.get(), static_cast<unsigned long>(std::labs(n - 1)), MPFR_RNDU);
    mpfr_div(chain.get(), chain.get(), z_abs.get(), MPFR_RNDU);
    chain = times(chain, root_error(k, root));
    mpfr_add(error.get(), error.get(), term.get(), MPFR_RNDU);
    mpfr_add(error.get(), error.get(), chain.get(), MPFR_RNDU);
  };
  accumulate(roots.dominant_approx());
  for (const auto& root : roots.others) accumulate(root);
  return {sum.re, sum.im, error, precision_bits};
}

RealEnclosure dominant_term_at(long k, long n, const RealEnclosure& alpha) {
  return coefficient_m(k, alpha) * alpha.pow(n - 1);
}

RealEnclosure dominant_term(long k, long n, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);
  // alpha^(n-1) < 2^(n-1): spend that many extra bits plus the error growth of
  // the power.
  const long bits = precision_bits + std::max(0L, n) + bit_length(n) + 16;
  return dominant_term_at(k, n, dominant_root(k, bits));
}

CertifiedInteger binet_round(long k, long n, std::optional<long> start_bits) {
  require_index(k, n);
  long bits = start_bits.value_or(std::max(64L, n + 64));
  require_precision(bits);
  for (; bits <= kCertificationPrecisionCap; bits *= 2) {
    const RealEnclosure term = dominant_term_at(k, n, dominant_root(k, bits));
    const mpz_class rounded = term.midpoint().round_half_up();

    // Gap to the boundaries rounded - 1/2 and rounded + 1/2.
    const mpq_class lower_edge = mpq_class(rounded) - mpq_class(1, 2);
    const mpq_class upper_edge = mpq_class(rounded) + mpq_class(1, 2);
    if (!term.strictly_inside(lower_edge, upper_edge)) continue;

    const mpfr_prec_t p = term.precision_bits();
    BigFloat below(p), above(p);
    mpfr_sub_q(below.get(), term.lo().get(), lower_edge.get_mpq_t(), MPFR_RNDD);
    mpfr_sub_q(above.get(), term.hi().get(), upper_edge.get_mpq_t(), MPFR_RNDU);
    mpfr_neg(above.get(), above.get(), MPFR_RNDD);
    BigFloat gap = compare(below, above) <= 0 ? below : above;
    if (gap.sign() <= 0) continue;
    return {rounded, std::move(gap), bits};
  }
  throw CertificationError("could not certify Round for k = " + std::to_string(k) + ", n = " + std::to_string(n) +
                           " within " + std::to_string(kCertificationPrecisionCap) + " bits");
}

}  // namespace kstep
