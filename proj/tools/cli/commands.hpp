#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>
#include <string>

#include "cli/output.hpp"

namespace kstep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // domain violation or failed check
inline constexpr int kExitUsage = 2;

inline constexpr long kDefaultPrecision = 128;
inline constexpr int kDefaultDecimals = 3;

// Thrown for malformed command lines; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndexRange {
  long lo = 0;
  long hi = 0;
};

// "n" or "lo..hi" (either bound may be negative).
IndexRange parse_range(const std::string& text);

enum class Method { iter, matrix, round };

struct DisplayOptions {
  // Explicit --precision or KBONACCI_PRECISION; commands fall back to their
  // own default when absent.
  std::optional<long> precision;
  int decimals = kDefaultDecimals;

  long precision_or(long fallback) const { return precision.value_or(fallback); }
};

OutputRecord cmd_gen(long k, IndexRange range, Method method, const DisplayOptions& options);
OutputRecord cmd_roots(long k, bool all, const DisplayOptions& options);
OutputRecord cmd_errors(long k, IndexRange range, const DisplayOptions& options);

struct VerifyOutcome {
  OutputRecord record;
  bool passed = false;
  std::vector<std::string> failures;
};

VerifyOutcome cmd_verify(long k_max, long n_max, const DisplayOptions& options);

struct ThresholdRequest {
  std::optional<std::string> preset;  // "scaled-fib" or "gn"
  std::optional<std::string> coefficient;
  std::optional<std::string> base;
  std::optional<std::string> sequence_file;
  std::optional<long> n_max;
  long n_start = 0;
  long exponent_offset = -1;
};

OutputRecord cmd_threshold(const ThresholdRequest& request, const DisplayOptions& options);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kstep::cli
