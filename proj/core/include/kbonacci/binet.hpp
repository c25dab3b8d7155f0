#pragma once

#include <gmpxx.h>

#include <optional>

#include "kbonacci/charpoly.hpp"
#include "kbonacci/complex.hpp"
#include "kbonacci/enclosure.hpp"

namespace kstep {

enum class CoefficientForm { m_function, spickerman_joyner, spickerman_k3 };

const char* to_string(CoefficientForm form);

// A coefficient evaluated at the dominant root.
struct CoefficientValue {
  long k = 0;
  CoefficientForm form = CoefficientForm::m_function;
  RealEnclosure value;
  RealEnclosure at_root;
};

// Non-certified complex value with a first-order error estimate.
struct ComplexApprox {
  ComplexFloat value;
  BigFloat error_bound;
};

struct CertifiedInteger {
  mpz_class value;
  BigFloat proof_gap;  // distance from the enclosure to the nearer half-integer boundary
  long precision_used = 0;
};

// Full k-root sum evaluated in complex arithmetic at fixed precision.
struct BinetSum {
  BigFloat real;
  BigFloat imag;
  BigFloat error_bound;  // first-order estimate from the root residuals
  long precision_bits = 0;
};

// m(x) = (x - 1) / (2 + (k + 1)(x - 2)). Throws PoleProximityError when x
// reaches the pole at 2 - 2/(k + 1).
RealEnclosure coefficient_m(long k, const RealEnclosure& x);
ComplexApprox coefficient_m(long k, const ApproxRoot& root);

// (z^(k+1) - z^k) / (2 z^k - (k + 1)).
ComplexApprox coefficient_sj(long k, const ApproxRoot& root);
RealEnclosure coefficient_sj(long k, const RealEnclosure& x);

// alpha^2 / ((alpha - sigma)(alpha - conj(sigma))) for the cubic.
RealEnclosure coefficient_spickerman_k3(const ComplexRootSet& roots);

// The chosen coefficient form at the certified dominant root.
CoefficientValue dominant_coefficient(long k, CoefficientForm form, long precision_bits);

BinetSum binet_full(long k, long n, long precision_bits);

// Enclosure of m(alpha) alpha^(n-1). `precision_bits` is the absolute accuracy
// target: the working precision grows with |n| to keep the width near
// 2^-precision_bits. Any integer n is accepted.
RealEnclosure dominant_term(long k, long n, long precision_bits);

// Same, from an already computed alpha enclosure.
RealEnclosure dominant_term_at(long k, long n, const RealEnclosure& alpha);

// Round(m(alpha) alpha^(n-1)), certified. Starts at max(64, n + 64) bits (or
// `start_bits` when given) and doubles until the enclosure clears both
// neighbouring half-integers; fails past 2^20 bits.
CertifiedInteger binet_round(long k, long n, std::optional<long> start_bits = std::nullopt);

inline constexpr long kCertificationPrecisionCap = 1L << 20;

}  // namespace kstep
