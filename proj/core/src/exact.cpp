#include "kbonacci/exact.hpp"

#include <stdexcept>

#include "kbonacci/errors.hpp"

namespace kstep {

SequenceWindow::SequenceWindow(long k) : k_(k), n_head_(1) {
  require_order(k);
  terms_.assign(static_cast<std::size_t>(k), 0);
  terms_.back() = 1;
}

const mpz_class& SequenceWindow::at(long n) const {
  const long offset = n - (n_head_ - k_ + 1);
  if (offset < 0 || offset >= k_) throw PreconditionError("index outside the current window");
  return terms_[static_cast<std::size_t>(offset)];
}

void SequenceWindow::advance() {
  mpz_class next = 0;
  for (const auto& t : terms_) next += t;
  terms_.erase(terms_.begin());
  terms_.push_back(std::move(next));
  ++n_head_;
}

bool doubling_identity_holds(const SequenceWindow& window, const mpz_class& next) {
  const long n = window.newest_index();
  if (n < 2) return true;
  // F_{n-k} has just left the window; recover it from F_n = sum of the k before it.
  mpz_class sum_before = 0;
  for (std::size_t i = 0; i + 1 < window.terms().size(); ++i) sum_before += window.terms()[i];
  const mpz_class dropped = window.newest() - sum_before;
  return next == 2 * window.newest() - dropped;
}

mpz_class kbonacci(long k, long n) {
  require_index(k, n);
  if (n <= 0) return 0;
  SequenceWindow window(k);
  while (window.newest_index() < n) window.advance();
  return window.newest();
}

std::vector<mpz_class> kbonacci_range(long k, long n_lo, long n_hi) {
  require_index(k, n_lo);
  if (n_hi < n_lo) throw MalformedRangeError("kbonacci_range: n_hi < n_lo");
  std::vector<mpz_class> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  SequenceWindow window(k);
  // The initial window already covers indices 2 - k .. 1.
  for (long n = n_lo; n <= n_hi; ++n) {
    while (window.newest_index() < n) window.advance();
    out.push_back(window.at(n));
  }
  return out;
}

CompanionMatrix::CompanionMatrix(long k) : k_(k), entries_(static_cast<std::size_t>(k * k), 0) {
  require_order(k);
  for (long c = 0; c < k; ++c) entries_[index(0, c)] = 1;
  for (long r = 1; r < k; ++r) entries_[index(r, r - 1)] = 1;
}

CompanionMatrix CompanionMatrix::identity(long k) {
  require_order(k);
  std::vector<mpz_class> e(static_cast<std::size_t>(k * k), 0);
  for (long i = 0; i < k; ++i) e[static_cast<std::size_t>(i * k + i)] = 1;
  return {k, std::move(e)};
}

CompanionMatrix CompanionMatrix::operator*(const CompanionMatrix& rhs) const {
  std::vector<mpz_class> out(entries_.size(), 0);
  for (long r = 0; r < k_; ++r) {
    for (long m = 0; m < k_; ++m) {
      const mpz_class& a = entries_[index(r, m)];
      if (a == 0) continue;
      for (long c = 0; c < k_; ++c) out[index(r, c)] += a * rhs.entries_[index(m, c)];
    }
  }
  return {k_, std::move(out)};
}

std::vector<mpz_class> CompanionMatrix::apply(const std::vector<mpz_class>& state) const {
  if (static_cast<long>(state.size()) != k_) throw std::invalid_argument("state length must equal k");
  std::vector<mpz_class> out(state.size(), 0);
  for (long r = 0; r < k_; ++r) {
    for (long c = 0; c < k_; ++c) out[static_cast<std::size_t>(r)] += entries_[index(r, c)] * state[static_cast<std::size_t>(c)];
  }
  return out;
}

CompanionMatrix CompanionMatrix::pow(unsigned long e) const {
  CompanionMatrix result = identity(k_);
  CompanionMatrix base = *this;
  for (; e != 0; e >>= 1) {
    if (e & 1UL) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

mpz_class kbonacci_matrix(long k, long n) {
  require_index(k, n);
  // State at index 1: (F_1, F_0, ..., F_{2-k}) = (1, 0, ..., 0).
  if (n <= 1) return n == 1 ? 1 : 0;
  const CompanionMatrix power = CompanionMatrix(k).pow(static_cast<unsigned long>(n - 1));
  return power(0, 0);
}

}  // namespace kstep
