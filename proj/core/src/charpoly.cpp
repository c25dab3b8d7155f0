#include "kbonacci/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kbonacci/errors.hpp"

namespace kstep {

mpq_class CharPoly::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (long c : coeffs) acc = acc * x + c;
  return acc;
}

RealEnclosure CharPoly::evaluate(const RealEnclosure& x) const {
  RealEnclosure acc = RealEnclosure::point(0, x.precision_bits());
  for (long c : coeffs) acc = acc * x + c;
  return acc;
}

void CharPoly::evaluate(const ComplexFloat& z, ComplexFloat& value, ComplexFloat& derivative) const {
  const mpfr_prec_t p = z.precision();
  ComplexFloat b(p), d(p);
  for (long c : coeffs) {
    d = d * z + b;
    b = b * z + c;
  }
  value = std::move(b);
  derivative = std::move(d);
}

CharPoly char_poly(long k) {
  require_order(k);
  CharPoly poly{k, std::vector<long>(static_cast<std::size_t>(k) + 1, -1)};
  poly.coeffs.front() = 1;
  return poly;
}

namespace {

RealEnclosure aux(long k, const RealEnclosure& x) { return x.pow(k) * (x - 2) + 1; }

// f'(x) = x^(k-1) ((k+1) x - 2k)
RealEnclosure aux_derivative(long k, const RealEnclosure& x) {
  return x.pow(k - 1) * (x * (k + 1) - 2 * k);
}

// Returns the dyadic cell of level `level` holding `x`, if there is one.
std::optional<RealEnclosure> snap_to_cell(const RealEnclosure& x, long level) {
  const mpfr_prec_t p = std::max<mpfr_prec_t>(x.precision_bits(), level + 4);
  BigFloat scaled(p + level);
  mpfr_mul_2si(scaled.get(), x.lo().get(), level, MPFR_RNDD);
  const mpz_class j = scaled.floor();
  mpfr_mul_2si(scaled.get(), x.hi().get(), level, MPFR_RNDU);
  if (compare(scaled, mpq_class(j + 1)) > 0) return std::nullopt;

  BigFloat lo(j, p, MPFR_RNDN), hi(mpz_class(j + 1), p, MPFR_RNDN);  // exact: j < 2^(level+1)
  mpfr_div_2si(lo.get(), lo.get(), level, MPFR_RNDN);
  mpfr_div_2si(hi.get(), hi.get(), level, MPFR_RNDN);
  return RealEnclosure(std::move(lo), std::move(hi));
}

RealEnclosure widen_precision(const RealEnclosure& x, mpfr_prec_t bits) {
  BigFloat lo(bits), hi(bits);
  mpfr_set(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

constexpr int kNewtonStepsPerLevel = 64;
constexpr mpfr_prec_t kMaxWorkingBits = mpfr_prec_t{1} << 22;

}  // namespace

RealEnclosure eval_aux(long k, const RealEnclosure& x, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);
  return aux(k, widen_precision(x, std::max<mpfr_prec_t>(x.precision_bits(), precision_bits)));
}

RealEnclosure eval_aux(long k, const mpq_class& x, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);
  return aux(k, RealEnclosure::of(x, precision_bits));
}

RealEnclosure dominant_root(long k, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);

  const long level = std::max(precision_bits, k + 16);
  mpfr_prec_t bits = level + 64;

  // Bracket [2 - 1/k, 2]: f < 0 at the left end, f(2) = 1.
  BigFloat a(mpq_class(2 * k - 1, k), bits, MPFR_RNDD);
  BigFloat b(2L, bits);
  if (!aux(k, RealEnclosure::point(a)).strictly_below(0)) {
    throw RootIsolationError("f(2 - 1/k) is not certified negative for k = " + std::to_string(k));
  }
  if (!aux(k, RealEnclosure::point(b)).strictly_above(0)) {
    throw RootIsolationError("f(2) is not certified positive for k = " + std::to_string(k));
  }

  const mpq_class switch_width(1, 16);
  BigFloat mid(bits), gap(bits);
  for (;;) {
    mpfr_sub(gap.get(), b.get(), a.get(), MPFR_RNDU);
    if (compare(gap, switch_width) < 0) break;
    mpfr_add(mid.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    const RealEnclosure f_mid = aux(k, RealEnclosure::point(mid));
    if (f_mid.strictly_below(0)) {
      a = mid;
    } else if (f_mid.strictly_above(0)) {
      b = mid;
    } else {
      break;  // sign unresolved at this precision; Newton takes over
    }
  }

  RealEnclosure x(a, b);
  for (;;) {
    for (int step = 0; step < kNewtonStepsPerLevel; ++step) {
      if (auto cell = snap_to_cell(x, level)) return *cell;

      BigFloat m(bits);
      mpfr_set(m.get(), x.midpoint().get(), MPFR_RNDN);
      const RealEnclosure f_m = aux(k, RealEnclosure::point(m));
      const RealEnclosure slope = aux_derivative(k, x);
      if (!slope.strictly_above(0)) {
        throw RootIsolationError("f' not certified positive on the bracket for k = " + std::to_string(k));
      }
      const auto next = x.intersect(RealEnclosure::point(m) - f_m / slope);
      if (!next) {
        throw RootIsolationError("interval Newton lost the root for k = " + std::to_string(k));
      }
      // No contraction at all means rounding noise dominates this precision.
      const bool stalled = compare(next->width(), x.width()) >= 0;
      x = *next;
      if (stalled) break;
    }
    bits *= 2;
    if (bits > kMaxWorkingBits) {
      throw RootIsolationError("working precision cap reached isolating alpha for k = " + std::to_string(k));
    }
    x = widen_precision(x, bits);
  }
}

RootBounds root_bounds(long k) {
  require_order(k);
  RootBounds bounds{mpq_class(2 * k - 1, k), mpq_class(2), 0};
  mpq_class wolfram = 2 * (1 - mpq_class(1, mpz_class(1) << static_cast<mp_bitcnt_t>(k)));
  wolfram.canonicalize();
  bounds.tight_lower = wolfram;
  if (k >= 4) bounds.tight_lower = std::max(bounds.tight_lower, mpq_class(6 * k - 1, 3 * k));
  return bounds;
}

ApproxRoot ComplexRootSet::dominant_approx() const {
  const CharPoly poly = char_poly(k);
  ComplexFloat z(dominant.midpoint(), BigFloat(dominant.precision_bits()));
  ComplexFloat value(z.precision()), slope(z.precision());
  poly.evaluate(z, value, slope);
  return {std::move(z), value.abs()};
}

namespace {

// Loose upper allowance on rounding error of a Horner pass at `bits`.
BigFloat evaluation_allowance(long k, mpfr_prec_t bits) {
  BigFloat allowance(64);
  mpfr_set_si_2exp(allowance.get(), 4 * (k + 1), -bits, MPFR_RNDU);
  return allowance;
}

double log2_abs(const BigFloat& x) {
  if (x.is_zero()) return -INFINITY;
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

}  // namespace

ComplexRootSet all_roots(long k, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);

  const mpfr_prec_t bits = precision_bits + 64;
  const CharPoly poly = char_poly(k);
  RealEnclosure alpha = dominant_root(k, bits);
  const ComplexFloat fixed(alpha.midpoint(), BigFloat(bits));

  // Starting points spread on a circle inside the unit disc, rotated off the
  // real axis so no two iterates start as exact conjugates of one another.
  const long count = k - 1;
  std::vector<ComplexFloat> z;
  z.reserve(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(count) + 0.4;
    z.emplace_back(0.8 * std::cos(angle), 0.8 * std::sin(angle), bits);
  }

  BigFloat stop(64);
  mpfr_set_si_2exp(stop.get(), 1, -(precision_bits + 32), MPFR_RNDN);
  const long max_iterations = 200 + 20 * k;

  ComplexFloat value(bits), slope(bits);
  for (long iter = 0; iter < max_iterations; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      poly.evaluate(z[i], value, slope);
      if (value.re.is_zero() && value.im.is_zero()) continue;
      const ComplexFloat ratio = value / slope;
      ComplexFloat repulsion = ComplexFloat(BigFloat(1L, bits), BigFloat(bits)) / (z[i] - fixed);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) repulsion = repulsion + ComplexFloat(BigFloat(1L, bits), BigFloat(bits)) / (z[i] - z[j]);
      }
      const ComplexFloat step = ratio / (ComplexFloat(BigFloat(1L, bits), BigFloat(bits)) - ratio * repulsion);
      z[i] = z[i] - step;
      if (compare(step.abs(), stop) > 0) converged = false;
    }
    if (converged) break;
  }

  const BigFloat allowance = evaluation_allowance(k, bits);
  BigFloat tolerance(64);
  mpfr_set_si_2exp(tolerance.get(), 1, -(precision_bits / 2), MPFR_RNDN);

  std::vector<ApproxRoot> others;
  std::vector<double> log2_residuals;
  bool ok = true;
  for (auto& root : z) {
    poly.evaluate(root, value, slope);
    BigFloat residual = value.abs();
    mpfr_add(residual.get(), residual.get(), allowance.get(), MPFR_RNDU);
    log2_residuals.push_back(log2_abs(residual));
    if (compare(residual, tolerance) >= 0) ok = false;
    others.push_back({std::move(root), std::move(residual)});
  }
  if (!ok) {
    throw RootConvergenceError("Aberth iteration did not reach 2^-" + std::to_string(precision_bits / 2) +
                                   " residuals for k = " + std::to_string(k),
                               std::move(log2_residuals));
  }
  for (const auto& root : others) {
    if (compare(root.value.abs(), 1L) >= 0) {
      throw RootIsolationError("a non-dominant root left the unit disc for k = " + std::to_string(k));
    }
  }

  std::sort(others.begin(), others.end(), [](const ApproxRoot& a, const ApproxRoot& b) {
    const int by_re = compare(a.value.re, b.value.re);
    if (by_re != 0) return by_re > 0;
    return compare(a.value.im, b.value.im) > 0;
  });
  return {k, precision_bits, std::move(alpha), std::move(others)};
}

}  // namespace kstep
