#pragma once

// Stern's diatomic sequence s(n): s(0) = 0, s(1) = 1, s(2n) = s(n),
// s(2n+1) = s(n) + s(n+1), together with the diatomic array Z(r,k;a,b),
// the ratio sequence t(n) = s(n)/s(n+1), and the dyadic block
// decomposition of [0, N) used by the counting code.

#include "stern/arith.hpp"

#include <cstdint>
#include <vector>

namespace stern {

/// Rows longer than 2^kDefaultRowBits entries are refused.
inline constexpr unsigned kDefaultRowBits = 22;

/// (s(n), s(n+1)). Consecutive entries are always coprime.
struct SternPair {
  Nat left;
  Nat right;
  friend bool operator==(const SternPair&, const SternPair&) = default;
};

/// s(n) by one most-significant-bit-first scan of n.
Nat stern(const Nat& n);
/// (s(n), s(n+1)) from the same scan.
SternPair stern_pair(const Nat& n);
/// t(n) = s(n)/s(n+1); t(0) = 0/1.
PosRational stern_ratio(const Nat& n);

/// Word-sized pair scan for hot loops; exact while s(n+1) < 2^64, which holds
/// for every n < 2^90.
std::pair<std::uint64_t, std::uint64_t> stern_pair_u64(std::uint64_t n);

/// s(0), ..., s(count - 1) via the defining recurrence. Entries fit a 64-bit
/// word for any table that fits in memory.
std::vector<std::uint64_t> stern_table(std::size_t count);

/// Successive Stern values with O(1) state:
/// s(n+1) = s(n-1) + s(n) - 2 (s(n-1) mod s(n)) for n >= 1.
class SternStream {
 public:
  SternStream() = default;
  /// Starts at index n (window holds s(n), s(n+1)).
  explicit SternStream(std::uint64_t n);

  std::uint64_t index() const { return index_; }
  std::uint64_t current() const { return current_; }
  std::uint64_t next_value() const { return next_; }
  void advance();

 private:
  std::uint64_t index_ = 0;
  std::uint64_t current_ = 0;
  std::uint64_t next_ = 1;
};

/// Z(r,0;a,b), ..., Z(r,2^r;a,b) by the closed form s(2^r-k)a + s(k)b.
/// Throws ResourceError if 2^r + 1 > 2^max_row_bits.
std::vector<Nat> diatomic_row(unsigned r, const Nat& a, const Nat& b,
                              unsigned max_row_bits = kDefaultRowBits);

/// s(2^r n + k) = s(2^r - k) s(n) + s(k) s(n+1), for 0 <= k <= 2^r.
Nat stern_block(unsigned r, const Nat& n, const Nat& k);

/// One dyadic block [2^exponent * multiplier, 2^exponent * (multiplier + 1)).
struct Block {
  unsigned exponent = 0;
  Nat multiplier;

  Nat begin() const { return multiplier << exponent; }
  Nat end() const { return (multiplier + 1) << exponent; }
  friend bool operator==(const Block&, const Block&) = default;
};

/// Blocks in order of decreasing exponent; they tile [0, N) left to right.
using BlockDecomposition = std::vector<Block>;

/// Splits [0, N) along the binary digits of N. Throws DomainError for N = 0.
BlockDecomposition block_decompose(const Nat& N);

}  // namespace stern
