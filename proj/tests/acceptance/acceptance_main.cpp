// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kbonacci/analysis.hpp"
#include "kbonacci/binet.hpp"
#include "kbonacci/charpoly.hpp"
#include "kbonacci/exact.hpp"

namespace {

using namespace kstep;

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& what) {
    if (passed) detail = what;
    passed = false;
  }
};

// |value - expected| <= 0.0005, with expected given as a decimal string.
bool within_half_milli(const BigFloat& value, const char* expected) {
  const mpq_class ref(BigFloat::parse(expected, 128, MPFR_RNDN).to_rational());
  const mpq_class tol(1, 2000);
  return compare(value, ref - tol) >= 0 && compare(value, ref + tol) <= 0;
}

mpq_class pow10_neg(unsigned e) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 10, e);
  return mpq_class(1, d);
}

Outcome theorem_sweep() {
  Outcome o;
  for (long k = 2; k <= 10; ++k) {
    const std::vector<mpz_class> exact = kbonacci_range(k, 2 - k, 500);
    for (long n = 2 - k; n <= 500; ++n) {
      if (binet_round(k, n).value != exact[static_cast<std::size_t>(n - (2 - k))])
        o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome fibonacci_chart() {
  Outcome o;
  const char* chart[] = {"0.447", "0.724", "1.171", "1.894", "3.065", "4.960", "8.025"};
  for (long n = 0; n <= 6; ++n) {
    if (!within_half_milli(dominant_term(2, n, 64).midpoint(), chart[n])) o.fail("n=" + std::to_string(n));
  }
  return o;
}

Outcome order_six_chart() {
  Outcome o;
  const char* terms[] = {"0.263", "0.522", "1.035", "2.053", "4.072", "8.078", "16.023", "31.782"};
  const char* errors[] = {".263", ".478", ".035", ".053", ".072", ".078", ".023", ".218"};
  const std::vector<ErrorRow> rows = error_table(6, 0, 7, 64);
  for (long n = 0; n <= 7; ++n) {
    if (!within_half_milli(rows[n].approx.midpoint(), terms[n])) o.fail("term n=" + std::to_string(n));
    if (!within_half_milli(rows[n].error.abs().midpoint(), errors[n])) o.fail("|error| n=" + std::to_string(n));
  }
  const auto above = [&](long a, long b) { return compare(rows[a].error.abs().lo(), rows[b].error.abs().hi()) > 0; };
  if (!above(1, 2)) o.fail("|E1| > |E2| not certified");
  if (!above(7, 6)) o.fail("|E7| > |E6| not certified");
  return o;
}

Outcome root_bounds_check() {
  Outcome o;
  for (long k = 2; k <= 64; ++k) {
    const RealEnclosure a = dominant_root(k, 128);
    if (!a.strictly_inside(2 - mpq_class(1, k), 2)) o.fail("(2 - 1/k, 2) k=" + std::to_string(k));
    if (k >= 4 && !a.strictly_inside(2 - mpq_class(1, 3 * k), 2)) o.fail("(2 - 1/(3k), 2) k=" + std::to_string(k));
    const mpq_class wolfram = 2 * (1 - mpq_class(1, mpz_class(1) << static_cast<mp_bitcnt_t>(k)));
    if (!a.strictly_above(wolfram)) o.fail("2(1 - 2^-k) k=" + std::to_string(k));
  }
  const char* chart[] = {"1.618", "1.839", "1.928", "1.966"};
  for (long k = 2; k <= 5; ++k) {
    if (dominant_root(k, 64).midpoint().to_fixed(3) != chart[k - 2]) o.fail("chart k=" + std::to_string(k));
  }
  return o;
}

Outcome coefficient_equivalence() {
  Outcome o;
  const double tol = 1e-20;
  for (long k = 2; k <= 10; ++k) {
    const ComplexRootSet roots = all_roots(k, 128);
    std::vector<ApproxRoot> all = roots.others;
    all.push_back(roots.dominant_approx());
    for (const ApproxRoot& r : all) {
      const ComplexFloat d = coefficient_sj(k, r).value - coefficient_m(k, r).value;
      if (!(d.abs().to_double() < tol)) o.fail("k=" + std::to_string(k));
    }
    if (k == 3) {
      const RealEnclosure s = coefficient_spickerman_k3(roots);
      const RealEnclosure m = dominant_coefficient(3, CoefficientForm::m_function, 128).value;
      BigFloat d(256);
      mpfr_sub(d.get(), s.midpoint().get(), m.midpoint().get(), MPFR_RNDN);
      if (!(std::abs(d.to_double()) < tol)) o.fail("Spickerman k=3");
    }
  }
  return o;
}

Outcome error_recurrence() {
  Outcome o;
  const mpq_class tol = pow10_neg(15);
  for (long k = 2; k <= 8; ++k) {
    const std::vector<ErrorRow> rows = error_table(k, 2 - k, 201, 256);
    const auto check = [&](const std::vector<RecurrenceResidual>& res, const char* name) {
      for (const RecurrenceResidual& r : res) {
        if (r.n < 2 || r.n > 200) continue;
        if (!r.residual.contains_zero() || compare(r.residual.width(), tol) >= 0)
          o.fail(std::string(name) + " k=" + std::to_string(k) + " n=" + std::to_string(r.n));
      }
    };
    check(check_error_recurrence(rows, k), "recurrence");
    check(check_two_step_identity(rows, k), "two-step");
  }
  return o;
}

Outcome m_properties() {
  Outcome o;
  for (long k = 2; k <= 32; ++k) {
    const MPropertyReport r = check_m_properties(k, 1024);
    if (!r.one_at_left_end || !r.half_at_two) o.fail("rational parts k=" + std::to_string(k));
    if (r.decrease_violations != 0 || r.reciprocal_violations != 0) o.fail("grid k=" + std::to_string(k));
    if (!r.intersections_at_two_and_k) o.fail("intersections k=" + std::to_string(k));
  }
  return o;
}

Outcome counterexamples() {
  Outcome o;
  const ThresholdReport scaled = rounding_threshold(scaled_fibonacci_problem(40));
  if (scaled.target.size() != 40 || !scaled.threshold || *scaled.threshold != 5) o.fail("scaled-fib");
  const ThresholdReport gn = rounding_threshold(gn_problem(40));
  if (gn.target.size() != 40 || gn.threshold) o.fail("gn");
  return o;
}

Outcome matrix_oracle() {
  Outcome o;
  for (long k = 2; k <= 10; ++k) {
    const std::vector<mpz_class> exact = kbonacci_range(k, 2 - k, 300);
    for (long n = 2 - k; n <= 300; ++n) {
      if (kbonacci_matrix(k, n) != exact[static_cast<std::size_t>(n - (2 - k))])
        o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome full_sum() {
  Outcome o;
  const mpq_class tol = pow10_neg(6);
  for (long k = 2; k <= 8; ++k) {
    for (long n = 2 - k; n <= 60; ++n) {
      const BinetSum s = binet_full(k, n, 256);
      const mpq_class diff = s.real.to_rational() - mpq_class(kbonacci(k, n));
      if (abs(diff) >= tol) o.fail("k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"rounded dominant term equals recurrence, k 2..10, n 2-k..500", theorem_sweep},
      {"Fibonacci dominant-term chart to 3 decimals", fibonacci_chart},
      {"k=6 dominant-term and |error| chart, non-monotone pattern", order_six_chart},
      {"dominant root bounds k 2..64 and chart values", root_bounds_check},
      {"coefficient forms agree below 1e-20, Spickerman k=3", coefficient_equivalence},
      {"error recurrence and two-step residuals, width < 1e-15", error_recurrence},
      {"m(x) properties k 2..32, 1024-point grids", m_properties},
      {"threshold presets: scaled-fib = 5, gn = none", counterexamples},
      {"recurrence equals companion-matrix power, k 2..10, n <= 300", matrix_oracle},
      {"full k-root sum within 1e-6 of exact, k 2..8, n <= 60", full_sum},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.passed) ++failures;
    std::printf("%s %2d %s (%.2fs)%s%s\n", outcome.passed ? "PASS" : "FAIL", index, name, seconds,
                outcome.passed ? "" : ": ", outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
