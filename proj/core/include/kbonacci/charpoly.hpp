#pragma once

#include <gmpxx.h>

#include <vector>

#include "kbonacci/complex.hpp"
#include "kbonacci/enclosure.hpp"

namespace kstep {

// x^k - x^(k-1) - ... - x - 1, coefficients listed from degree k down to 0.
struct CharPoly {
  long k = 0;
  std::vector<long> coeffs;

  mpq_class evaluate(const mpq_class& x) const;
  RealEnclosure evaluate(const RealEnclosure& x) const;
  // Horner evaluation of p(z) and p'(z) in one pass.
  void evaluate(const ComplexFloat& z, ComplexFloat& value, ComplexFloat& derivative) const;
};

CharPoly char_poly(long k);

// f(x) = (x - 1) p(x) = x^k (x - 2) + 1, evaluated in the factored form.
RealEnclosure eval_aux(long k, const RealEnclosure& x, long precision_bits);
RealEnclosure eval_aux(long k, const mpq_class& x, long precision_bits);

// Certified enclosure of the dominant root alpha of p.
//
// The result is always a dyadic cell [j 2^-L, (j+1) 2^-L] with
// L = max(precision_bits, k + 16), so its width is at most 2^-precision_bits
// and enclosures at increasing precision are nested. Located by bisection of
// f on [2 - 1/k, 2] down to width 1/16, then interval Newton (at most 64 steps
// per working precision, which doubles when Newton stalls).
RealEnclosure dominant_root(long k, long precision_bits);

struct RootBounds {
  mpq_class lower;        // 2 - 1/k
  mpq_class upper;        // 2
  mpq_class tight_lower;  // max(2 - 1/(3k) when k >= 4, 2 (1 - 2^-k))
};

RootBounds root_bounds(long k);

struct ApproxRoot {
  ComplexFloat value;
  BigFloat residual_bound;  // |p(value)| plus an allowance for evaluation error
};

struct ComplexRootSet {
  long k = 0;
  long precision_bits = 0;
  RealEnclosure dominant;
  std::vector<ApproxRoot> others;  // k - 1 roots, ordered by real part then imaginary part, descending

  ApproxRoot dominant_approx() const;
};

// Dominant root from dominant_root(); the other k - 1 roots by Aberth-Ehrlich
// iteration with the dominant root held fixed. Every residual ends below
// 2^-(precision_bits / 2) or RootConvergenceError is thrown.
ComplexRootSet all_roots(long k, long precision_bits);

}  // namespace kstep
