#include "cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kbonacci/analysis.hpp"
#include "kbonacci/binet.hpp"
#include "kbonacci/charpoly.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/exact.hpp"

namespace kstep::cli {

namespace {

long parse_long(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
  if (used != text.size()) throw UsageError("invalid " + what + ": '" + text + "'");
  return value;
}

std::string str(const mpz_class& v) { return v.get_str(); }

std::string range_text(IndexRange r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

std::string complex_text(const ComplexFloat& z, int decimals) {
  BigFloat im = z.im;
  const bool negative = im.sign() < 0;
  mpfr_abs(im.get(), im.get(), MPFR_RNDN);
  return z.re.to_fixed(decimals) + (negative ? " - " : " + ") + im.to_fixed(decimals) + "i";
}

std::string yes_no(bool ok) { return ok ? "pass" : "FAIL"; }

}  // namespace

IndexRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long n = parse_long(text, "index");
    return {n, n};
  }
  IndexRange r{parse_long(text.substr(0, dots), "range start"), parse_long(text.substr(dots + 2), "range end")};
  if (r.hi < r.lo) throw UsageError("empty range '" + text + "'");
  return r;
}

OutputRecord cmd_gen(long k, IndexRange range, Method method, const DisplayOptions& options) {
  require_index(k, range.lo);
  OutputRecord record;
  record.command = "gen";
  const char* method_name = method == Method::iter ? "iter" : method == Method::matrix ? "matrix" : "round";
  record.parameters = {{"k", std::to_string(k)}, {"n", range_text(range)}, {"method", method_name}};

  switch (method) {
    case Method::iter: {
      record.columns = {"n", "F_n"};
      const auto values = kbonacci_range(k, range.lo, range.hi);
      for (long n = range.lo; n <= range.hi; ++n) {
        record.add_row({std::to_string(n), str(values[static_cast<std::size_t>(n - range.lo)])});
      }
      break;
    }
    case Method::matrix: {
      record.columns = {"n", "F_n"};
      for (long n = range.lo; n <= range.hi; ++n) record.add_row({std::to_string(n), str(kbonacci_matrix(k, n))});
      break;
    }
    case Method::round: {
      record.columns = {"n", "F_n", "precision_used", "proof_gap"};
      long max_bits = 0;
      std::optional<BigFloat> min_gap;
      for (long n = range.lo; n <= range.hi; ++n) {
        const CertifiedInteger c = binet_round(k, n, options.precision);
        record.add_row({std::to_string(n), str(c.value), std::to_string(c.precision_used),
                        c.proof_gap.to_fixed(options.decimals)});
        max_bits = std::max(max_bits, c.precision_used);
        if (!min_gap || compare(c.proof_gap, *min_gap) < 0) min_gap = c.proof_gap;
      }
      record.certification = {{"precision_used", std::to_string(max_bits)},
                              {"proof_gap", min_gap->to_scientific(3)}};
      break;
    }
  }
  return record;
}

OutputRecord cmd_roots(long k, bool all, const DisplayOptions& options) {
  const long bits = options.precision_or(kDefaultPrecision);
  const int d = options.decimals;
  OutputRecord record;
  record.command = "roots";
  record.parameters = {{"k", std::to_string(k)}, {"precision", std::to_string(bits)}, {"all", all ? "true" : "false"}};
  record.columns = {"quantity", "value", "modulus", "residual"};

  const RealEnclosure alpha = dominant_root(k, bits);
  const RootBounds bounds = root_bounds(k);
  const CharPoly poly = char_poly(k);
  record.add_row({"alpha", render_enclosure(alpha, d), alpha.midpoint().to_fixed(d),
                  BigFloat(poly.evaluate(RealEnclosure::point(alpha.midpoint())).magnitude()).to_scientific(3)});
  record.add_row({"lower_bound", render_rational(bounds.lower, d) + " (" + bounds.lower.get_str() + ")", "", ""});
  record.add_row({"upper_bound", render_rational(bounds.upper, d) + " (" + bounds.upper.get_str() + ")", "", ""});
  record.add_row({"tight_lower", render_rational(bounds.tight_lower, d) + " (" + bounds.tight_lower.get_str() + ")",
                  "", ""});
  if (all) {
    const ComplexRootSet roots = all_roots(k, bits);
    long i = 1;
    for (const auto& r : roots.others) {
      record.add_row({"root_" + std::to_string(i++), complex_text(r.value, d), r.value.abs().to_fixed(d),
                      r.residual_bound.to_scientific(3)});
    }
  }
  record.certification = {{"precision_used", std::to_string(alpha.precision_bits())},
                          {"alpha_width", alpha.width().to_scientific(3)},
                          {"inside_lower_upper", yes_no(alpha.strictly_inside(bounds.lower, bounds.upper))},
                          {"above_tight_lower", yes_no(alpha.strictly_above(bounds.tight_lower))}};
  return record;
}

OutputRecord cmd_errors(long k, IndexRange range, const DisplayOptions& options) {
  const long bits = options.precision_or(kDefaultPrecision);
  const int d = options.decimals;
  const auto rows = error_table(k, range.lo, range.hi, bits);
  OutputRecord record;
  record.command = "errors";
  record.parameters = {{"k", std::to_string(k)}, {"n", range_text(range)}, {"precision", std::to_string(bits)}};
  record.columns = {"n", "F_n", "dominant_term", "abs_error"};
  for (const auto& row : rows) {
    record.add_row({std::to_string(row.n), str(row.exact), render_enclosure(row.approx, d),
                    render_enclosure(row.error.abs(), d)});
  }
  record.certification = {{"precision_used", std::to_string(rows.front().approx.precision_bits())},
                          {"abs_error_below_half", "certified"}};
  return record;
}

namespace {

struct OrderReport {
  long k = 0;
  long checked = 0;
  std::vector<std::string> failures;
  bool bounds_ok = false;
  bool coefficients_ok = false;
  bool m_properties_ok = false;
  bool error_bound_ok = false;
};

OrderReport verify_order(long k, long n_max, long bits) {
  OrderReport rep;
  rep.k = k;
  auto fail = [&](std::string what) { rep.failures.push_back("k=" + std::to_string(k) + ": " + std::move(what)); };

  const auto exact = kbonacci_range(k, 2 - k, n_max);
  for (long n = 2 - k; n <= n_max; ++n) {
    const mpz_class& f = exact[static_cast<std::size_t>(n - (2 - k))];
    ++rep.checked;
    if (kbonacci_matrix(k, n) != f) fail("n=" + std::to_string(n) + " matrix != recurrence");
    if (binet_round(k, n).value != f) fail("n=" + std::to_string(n) + " binet_round != recurrence");
  }

  const RootBounds bounds = root_bounds(k);
  const RealEnclosure alpha = dominant_root(k, bits);
  rep.bounds_ok = alpha.strictly_inside(bounds.lower, bounds.upper) && alpha.strictly_above(bounds.tight_lower);
  if (!rep.bounds_ok) fail("alpha outside its bounds");

  // Coefficient forms agree at every root, and m(alpha) lies in (1/2, 1).
  const ComplexRootSet roots = all_roots(k, bits);
  BigFloat tolerance(64);
  mpfr_set_si_2exp(tolerance.get(), 1, -(bits / 2), MPFR_RNDN);
  rep.coefficients_ok = coefficient_m(k, alpha).strictly_inside(mpq_class(1, 2), mpq_class(1));
  std::vector<ApproxRoot> every{roots.dominant_approx()};
  every.insert(every.end(), roots.others.begin(), roots.others.end());
  for (const auto& r : every) {
    const ComplexFloat diff = coefficient_sj(k, r).value - coefficient_m(k, r).value;
    if (compare(diff.abs(), tolerance) >= 0) rep.coefficients_ok = false;
  }
  // Both forms enclose the same number for the cubic, so they must overlap.
  if (k == 3 && !coefficient_spickerman_k3(roots).intersect(coefficient_m(3, alpha))) rep.coefficients_ok = false;
  if (!rep.coefficients_ok) fail("coefficient forms disagree");

  rep.m_properties_ok = check_m_properties(k, 1024).all_passed();
  if (!rep.m_properties_ok) fail("m(x) property check failed");

  try {
    const auto rows = error_table(k, 2 - k, n_max, bits);
    rep.error_bound_ok = true;
    for (const auto& res : check_error_recurrence(rows, k)) {
      if (!res.residual.contains_zero()) {
        rep.error_bound_ok = false;
        fail("n=" + std::to_string(res.n) + " error recurrence residual excludes 0");
      }
    }
  } catch (const CertificationError& e) {
    fail(e.what());
  }
  return rep;
}

}  // namespace

VerifyOutcome cmd_verify(long k_max, long n_max, const DisplayOptions& options) {
  if (k_max < 2) throw UsageError("--k-max must be at least 2");
  if (n_max < 1) throw UsageError("--n-max must be at least 1");
  const long bits = options.precision_or(kDefaultPrecision);

  std::vector<std::future<OrderReport>> jobs;
  for (long k = 2; k <= k_max; ++k) {
    jobs.push_back(std::async(std::launch::async, verify_order, k, n_max, bits));
  }

  VerifyOutcome outcome;
  OutputRecord& record = outcome.record;
  record.command = "verify";
  record.parameters = {{"k_max", std::to_string(k_max)}, {"n_max", std::to_string(n_max)},
                       {"precision", std::to_string(bits)}};
  record.columns = {"k", "indices_checked", "mismatches", "root_bounds", "coefficients", "m_properties",
                    "error_bound"};
  long checked = 0;
  for (auto& job : jobs) {
    OrderReport rep = job.get();
    checked += rep.checked;
    record.add_row({std::to_string(rep.k), std::to_string(rep.checked), std::to_string(rep.failures.size()),
                    yes_no(rep.bounds_ok), yes_no(rep.coefficients_ok), yes_no(rep.m_properties_ok),
                    yes_no(rep.error_bound_ok)});
    outcome.failures.insert(outcome.failures.end(), rep.failures.begin(), rep.failures.end());
  }
  outcome.passed = outcome.failures.empty();
  record.certification = {{"orders", std::to_string(k_max - 1)},
                          {"indices_checked", std::to_string(checked)},
                          {"failures", std::to_string(outcome.failures.size())},
                          {"result", outcome.passed ? "pass" : "FAIL"}};
  return outcome;
}

namespace {

std::vector<mpz_class> read_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open sequence file '" + path + "'");
  std::vector<mpz_class> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    mpz_class v;
    if (v.set_str(token, 10) != 0) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": not a decimal integer: '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("sequence file '" + path + "' is empty");
  return values;
}

}  // namespace

OutputRecord cmd_threshold(const ThresholdRequest& request, const DisplayOptions& options) {
  ThresholdProblem problem{BigFloat(64), BigFloat(64), {}, 0, 0};
  OutputRecord record;
  record.command = "threshold";

  if (request.preset) {
    if (request.coefficient || request.base || request.sequence_file) {
      throw UsageError("--preset cannot be combined with --coeff/--base/--seq");
    }
    const long n_max = request.n_max.value_or(40);
    if (*request.preset == "scaled-fib") {
      problem = scaled_fibonacci_problem(n_max);
    } else if (*request.preset == "gn") {
      problem = gn_problem(n_max);
    } else {
      throw UsageError("unknown preset '" + *request.preset + "' (expected scaled-fib or gn)");
    }
    record.parameters = {{"preset", *request.preset}, {"n_max", std::to_string(n_max)}};
  } else {
    if (!request.coefficient || !request.base || !request.sequence_file) {
      throw UsageError("threshold needs --preset, or all of --coeff, --base and --seq");
    }
    const long bits = options.precision_or(256);
    try {
      problem.coefficient = BigFloat::parse(*request.coefficient, bits, MPFR_RNDN);
      problem.base = BigFloat::parse(*request.base, bits, MPFR_RNDN);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    problem.target = read_sequence(*request.sequence_file);
    problem.n_start = request.n_start;
    problem.exponent_offset = request.exponent_offset;
    if (request.n_max) {
      const long keep = *request.n_max - request.n_start + 1;
      if (keep < 1) throw UsageError("--n-max lies before --n-start");
      if (static_cast<long>(problem.target.size()) > keep) problem.target.resize(static_cast<std::size_t>(keep));
    }
    record.parameters = {{"coeff", *request.coefficient},
                         {"base", *request.base},
                         {"seq", *request.sequence_file},
                         {"n_start", std::to_string(request.n_start)},
                         {"offset", std::to_string(request.exponent_offset)}};
  }

  const ThresholdReport report = rounding_threshold(problem);
  record.columns = {"n", "target", "rounded", "match"};
  for (long n = report.n_start; n <= report.verified_up_to; ++n) {
    const auto i = static_cast<std::size_t>(n - report.n_start);
    record.add_row({std::to_string(n), str(report.target[i]), str(report.rounded[i]),
                    report.matches(n) ? "yes" : "no"});
  }
  record.certification = {{"threshold", report.threshold ? std::to_string(*report.threshold) : "none"},
                          {"verified_up_to", std::to_string(report.verified_up_to)}};
  return record;
}

namespace {

std::optional<long> precision_from_environment() {
  const char* env = std::getenv("KBONACCI_PRECISION");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return parse_long(env, "KBONACCI_PRECISION");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-generalized Fibonacci numbers: exact, Binet sum and certified rounding", "kbonacci"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "table";
  std::optional<long> precision;
  int decimals = kDefaultDecimals;
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--precision", precision, "Working precision in bits (>= 32)")->check(CLI::Range(32L, 1L << 20));
  app.add_option("--decimals", decimals, "Decimal places for real values")->check(CLI::Range(0, 1000));

  long k = 0;
  std::string range_arg;

  auto* gen = app.add_subcommand("gen", "Generate F_n^(k) for an index or range lo..hi");
  std::string method_name = "iter";
  gen->add_option("k", k, "Order k >= 2")->required()->check(CLI::Range(2L, 1L << 20));
  gen->add_option("n", range_arg, "Index n or range lo..hi")->required();
  gen->add_option("--method", method_name, "iter, matrix or round")->check(CLI::IsMember({"iter", "matrix", "round"}));

  auto* roots = app.add_subcommand("roots", "Dominant root enclosure and bounds");
  bool all = false;
  roots->add_option("k", k, "Order k >= 2")->required()->check(CLI::Range(2L, 1L << 20));
  roots->add_flag("--all", all, "Also list the k - 1 non-dominant roots");

  auto* errors = app.add_subcommand("errors", "Error table E_n = F_n - m(alpha) alpha^(n-1)");
  errors->add_option("k", k, "Order k >= 2")->required()->check(CLI::Range(2L, 1L << 20));
  errors->add_option("n", range_arg, "Index n or range lo..hi")->required();

  auto* verify = app.add_subcommand("verify", "Sweep every check over k <= K, n <= N");
  long k_max = 10;
  long n_max = 300;
  verify->add_option("--k-max", k_max, "Largest order")->check(CLI::Range(2L, 1L << 20));
  verify->add_option("--n-max", n_max, "Largest index")->check(CLI::Range(1L, 1L << 30));

  auto* threshold = app.add_subcommand("threshold", "Rounding threshold of coeff * base^(n + offset)");
  ThresholdRequest request;
  threshold->add_option("--preset", request.preset, "scaled-fib or gn")->check(CLI::IsMember({"scaled-fib", "gn"}));
  threshold->add_option("--coeff", request.coefficient, "Coefficient (decimal)");
  threshold->add_option("--base", request.base, "Base (decimal, > 1)");
  threshold->add_option("--seq", request.sequence_file, "File with one integer per line");
  threshold->add_option("--n-max", request.n_max, "Last index tested");
  threshold->add_option("--n-start", request.n_start, "Index of the first line of --seq");
  threshold->add_option("--offset", request.exponent_offset, "Exponent offset (default -1: coeff * base^(n-1))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  try {
    DisplayOptions options;
    options.precision = precision ? precision : precision_from_environment();
    if (options.precision && *options.precision < 32) throw UsageError("precision must be at least 32 bits");
    options.decimals = decimals;
    const Format format = format_name == "csv" ? Format::csv : format_name == "json" ? Format::json : Format::table;

    if (*gen) {
      const Method method = method_name == "matrix" ? Method::matrix : method_name == "round" ? Method::round : Method::iter;
      render(cmd_gen(k, parse_range(range_arg), method, options), format, out);
    } else if (*roots) {
      render(cmd_roots(k, all, options), format, out);
    } else if (*errors) {
      render(cmd_errors(k, parse_range(range_arg), options), format, out);
    } else if (*verify) {
      const VerifyOutcome outcome = cmd_verify(k_max, n_max, options);
      render(outcome.record, format, out);
      for (const auto& f : outcome.failures) err << "mismatch: " << f << '\n';
      return outcome.passed ? kExitOk : kExitFailure;
    } else if (*threshold) {
      render(cmd_threshold(request, options), format, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IndexOutOfRangeError& e) {
    err << "error: " << e.what() << " (F_n is defined for n >= 2 - k)\n";
    return kExitFailure;
  } catch (const OrderOutOfRangeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace kstep::cli
