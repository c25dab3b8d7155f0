#pragma once

#include <gmpxx.h>

#include <vector>

namespace kstep {

// The most recent k terms of F^(k), oldest first. Starts at the initial
// conditions 0, ..., 0, 1 with the newest term at index 1.
class SequenceWindow {
 public:
  explicit SequenceWindow(long k);

  long order() const noexcept { return k_; }
  long newest_index() const noexcept { return n_head_; }
  const mpz_class& newest() const { return terms_.back(); }
  const std::vector<mpz_class>& terms() const noexcept { return terms_; }
  // Term with index n, which must lie in [newest_index() - k + 1, newest_index()].
  const mpz_class& at(long n) const;

  // Appends the sum of the current k terms and drops the oldest.
  void advance();

 private:
  long k_;
  long n_head_;
  std::vector<mpz_class> terms_;
};

// k x k: ones on the top row, identity on the subdiagonal. Maps the state
// (F_{n-1}, ..., F_{n-k}) to (F_n, ..., F_{n-k+1}).
class CompanionMatrix {
 public:
  explicit CompanionMatrix(long k);

  long order() const noexcept { return k_; }
  const mpz_class& operator()(long row, long col) const { return entries_[index(row, col)]; }

  CompanionMatrix operator*(const CompanionMatrix& rhs) const;
  std::vector<mpz_class> apply(const std::vector<mpz_class>& state) const;
  CompanionMatrix pow(unsigned long e) const;

  static CompanionMatrix identity(long k);

 private:
  CompanionMatrix(long k, std::vector<mpz_class> entries) : k_(k), entries_(std::move(entries)) {}
  std::size_t index(long row, long col) const { return static_cast<std::size_t>(row * k_ + col); }

  long k_;
  std::vector<mpz_class> entries_;
};

// F_n^(k) by the defining k-term sum. O(n k) big-integer additions.
mpz_class kbonacci(long k, long n);

// [F_{n_lo}, ..., F_{n_hi}] in one pass.
std::vector<mpz_class> kbonacci_range(long k, long n_lo, long n_hi);

// F_n^(k) by binary powering of the companion matrix. Independent of
// kbonacci(); used as its cross-check oracle.
mpz_class kbonacci_matrix(long k, long n);

// Whether F_{n+1} = 2 F_n - F_{n-k} holds at the window's head, for n >= 2.
// The window itself never advances this way.
bool doubling_identity_holds(const SequenceWindow& window, const mpz_class& next);

}  // namespace kstep
