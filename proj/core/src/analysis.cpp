#include "kbonacci/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kbonacci/binet.hpp"
#include "kbonacci/charpoly.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/exact.hpp"

namespace kstep {

namespace {

long bit_length(long v) { return static_cast<long>(std::bit_width(static_cast<unsigned long>(std::labs(v)))); }

void require_contiguous(const std::vector<ErrorRow>& rows, long k) {
  if (static_cast<long>(rows.size()) <= k) {
    throw MalformedRangeError("need more than k = " + std::to_string(k) + " rows, got " + std::to_string(rows.size()));
  }
  if (rows.front().n < 2 - k) throw MalformedRangeError("rows start below 2 - k");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].n != rows[i - 1].n + 1) {
      throw MalformedRangeError("rows are not contiguous at n = " + std::to_string(rows[i].n));
    }
  }
}

mpq_class m_rational(long k, const mpq_class& x) {
  mpq_class out = (x - 1) / (2 + (k + 1) * (x - 2));
  out.canonicalize();
  return out;
}

}  // namespace

std::vector<ErrorRow> error_table(long k, long n_lo, long n_hi, long precision_bits) {
  require_index(k, n_lo);
  require_precision(precision_bits);
  if (n_hi < n_lo) throw std::invalid_argument("error_table: n_hi < n_lo");

  const std::vector<mpz_class> exact = kbonacci_range(k, n_lo, n_hi);
  const mpq_class half(1, 2);
  for (long bits = precision_bits + std::max(0L, n_hi) + bit_length(n_hi) + 16; bits <= kCertificationPrecisionCap;
       bits *= 2) {
    const RealEnclosure alpha = dominant_root(k, bits);
    std::vector<ErrorRow> rows;
    rows.reserve(exact.size());
    bool certified = true;
    for (long n = n_lo; n <= n_hi && certified; ++n) {
      const mpz_class& f = exact[static_cast<std::size_t>(n - n_lo)];
      RealEnclosure approx = dominant_term_at(k, n, alpha);
      RealEnclosure error = f - approx;
      certified = error.strictly_inside(-half, half);
      rows.push_back({n, f, std::move(approx), std::move(error)});
    }
    if (certified) return rows;
  }
  throw CertificationError("|E_n| < 1/2 could not be certified for k = " + std::to_string(k));
}

std::vector<RecurrenceResidual> check_error_recurrence(const std::vector<ErrorRow>& rows, long k) {
  require_order(k);
  require_contiguous(rows, k);
  std::vector<RecurrenceResidual> out;
  for (std::size_t i = static_cast<std::size_t>(k); i < rows.size(); ++i) {
    if (rows[i].n < 2) continue;
    RealEnclosure residual = rows[i].error;
    for (long j = 1; j <= k; ++j) residual = residual - rows[i - static_cast<std::size_t>(j)].error;
    out.push_back({rows[i].n, std::move(residual)});
  }
  return out;
}

std::vector<RecurrenceResidual> check_two_step_identity(const std::vector<ErrorRow>& rows, long k) {
  require_order(k);
  require_contiguous(rows, k);
  std::vector<RecurrenceResidual> out;
  for (std::size_t i = static_cast<std::size_t>(k); i + 1 < rows.size(); ++i) {
    if (rows[i].n < 2) continue;
    const RealEnclosure predicted = rows[i].error * 2 - rows[i - static_cast<std::size_t>(k)].error;
    out.push_back({rows[i].n, rows[i + 1].error - predicted});
  }
  return out;
}

MPropertyReport check_m_properties(long k, long samples, long precision_bits) {
  require_order(k);
  require_precision(precision_bits);
  if (samples < 2) throw PreconditionError("check_m_properties needs at least 2 samples");

  MPropertyReport report;
  report.k = k;
  report.samples = samples;

  const mpq_class left(2 * k - 1, k);
  report.one_at_left_end = m_rational(k, left) == 1;
  report.half_at_two = m_rational(k, mpq_class(2)) == mpq_class(1, 2);

  // 1/x = m(x)  <=>  x^2 - (k+2) x + 2k = 0.
  const mpz_class b = k + 2;
  const mpz_class c = 2 * k;
  const mpz_class disc = b * b - 4 * c;
  if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t()) != 0) {
    const mpz_class root = sqrt(disc);
    for (const mpz_class& numer : {mpz_class(b + root), mpz_class(b - root)}) {
      mpq_class x(numer, 2);
      x.canonicalize();
      if (x != 0 && 2 + (k + 1) * (x - 2) != 0 && m_rational(k, x) == 1 / x &&
          std::find(report.intersections.begin(), report.intersections.end(), x) == report.intersections.end()) {
        report.intersections.push_back(x);
      }
    }
  }
  std::vector<mpq_class> expected{mpq_class(2), mpq_class(k)};
  std::vector<mpq_class> found = report.intersections;
  std::sort(found.begin(), found.end());
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  report.intersections_at_two_and_k = found == expected;

  const mpq_class step = mpq_class(1, k) / (samples - 1);
  std::optional<RealEnclosure> previous;
  for (long i = 0; i < samples; ++i) {
    const mpq_class x = left + step * i;
    const RealEnclosure xe = RealEnclosure::of(x, precision_bits);
    RealEnclosure m = coefficient_m(k, xe);
    if (previous && compare(m.hi(), previous->lo()) >= 0) ++report.decrease_violations;
    if (i > 0 && i + 1 < samples) {
      if (compare(m.lo(), xe.reciprocal().hi()) <= 0) ++report.reciprocal_violations;
    }
    previous = std::move(m);
  }
  return report;
}

ThresholdReport rounding_threshold(const BigFloat& coefficient, const BigFloat& base,
                                   const std::vector<mpz_class>& target, long n_start, long exponent_offset) {
  if (target.empty()) throw PreconditionError("rounding_threshold needs a non-empty target");
  if (compare(base, 1L) <= 0) throw PreconditionError("rounding_threshold needs base > 1");

  ThresholdReport report;
  report.n_start = n_start;
  report.exponent_offset = exponent_offset;
  report.target = target;
  const long n_end = n_start + static_cast<long>(target.size()) - 1;
  report.verified_up_to = n_end;

  const mpfr_prec_t input_bits = std::max(coefficient.precision(), base.precision());
  for (long n = n_start; n <= n_end; ++n) {
    const long exponent = n + exponent_offset;
    const mpfr_prec_t bits = input_bits + std::labs(exponent) + 64;
    BigFloat value(bits);
    mpfr_pow_si(value.get(), base.get(), exponent, MPFR_RNDN);
    mpfr_mul(value.get(), value.get(), coefficient.get(), MPFR_RNDN);
    report.rounded.push_back(value.round_half_up());
  }

  // Walk back from the end while indices keep matching.
  long first_of_tail = n_end + 1;
  while (first_of_tail > n_start && report.matches(first_of_tail - 1)) --first_of_tail;
  if (first_of_tail <= n_end) report.threshold = first_of_tail;
  return report;
}

ThresholdReport rounding_threshold(const ThresholdProblem& problem) {
  return rounding_threshold(problem.coefficient, problem.base, problem.target, problem.n_start,
                            problem.exponent_offset);
}

namespace {

constexpr mpfr_prec_t kPresetBits = 256;

BigFloat sqrt5() {
  BigFloat s(kPresetBits);
  mpfr_sqrt_ui(s.get(), 5, MPFR_RNDN);
  return s;
}

BigFloat golden_ratio() {
  BigFloat phi = sqrt5();
  mpfr_add_ui(phi.get(), phi.get(), 1, MPFR_RNDN);
  mpfr_div_2ui(phi.get(), phi.get(), 1, MPFR_RNDN);
  return phi;
}

}  // namespace

ThresholdProblem scaled_fibonacci_problem(long n_max) {
  if (n_max < 1) throw PreconditionError("scaled-fib preset needs n_max >= 1");
  BigFloat coefficient(kPresetBits);
  mpfr_ui_div(coefficient.get(), 10, sqrt5().get(), MPFR_RNDN);
  std::vector<mpz_class> target = kbonacci_range(2, 1, n_max);
  for (auto& t : target) t *= 10;
  return {std::move(coefficient), golden_ratio(), std::move(target), 1, 0};
}

ThresholdProblem gn_problem(long n_max) {
  if (n_max < 1) throw PreconditionError("gn preset needs n_max >= 1");
  BigFloat coefficient = sqrt5();
  mpfr_mul_2ui(coefficient.get(), coefficient.get(), 1, MPFR_RNDN);
  mpfr_ui_div(coefficient.get(), 1, coefficient.get(), MPFR_RNDN);
  BigFloat base = sqrt5();
  mpfr_add_ui(base.get(), base.get(), 1, MPFR_RNDN);

  std::vector<mpz_class> target{1, 2};
  while (static_cast<long>(target.size()) < n_max) {
    const std::size_t s = target.size();
    target.push_back(2 * target[s - 1] + 4 * target[s - 2]);
  }
  target.resize(static_cast<std::size_t>(n_max));
  return {std::move(coefficient), std::move(base), std::move(target), 1, 0};
}

ThresholdProblem fibonacci_problem(long n_max) {
  if (n_max < 0) throw PreconditionError("fibonacci preset needs n_max >= 0");
  const RealEnclosure alpha = dominant_root(2, kPresetBits);
  BigFloat coefficient = coefficient_m(2, alpha).midpoint();
  return {std::move(coefficient), alpha.midpoint(), kbonacci_range(2, 0, n_max), 0, -1};
}

}  // namespace kstep
