#pragma once

// The Stern enumeration n -> s(n)/s(n+1) of the positive rationals and its
// inverse through odd-length continued fractions, Stern-Brocot rows, bit
// reversal, and the Minkowski question-mark function on rationals.

#include "stern/arith.hpp"
#include "stern/sequence.hpp"

#include <variant>
#include <vector>

namespace stern {

/// Indices longer than this many bits are refused by index_of_rational and
/// minkowski_q (the binary word is materialized bit by bit).
inline constexpr unsigned kDefaultIndexBits = 1U << 24;

/// Continued fraction q[0] + 1/(q[1] + 1/(... + 1/q[last])) with every
/// quotient >= 1. Produced with odd length by to_odd_cfrac.
struct CFrac {
  std::vector<Nat> quotients;

  PosRational value() const;
  Nat quotient_sum() const;
  friend bool operator==(const CFrac&, const CFrac&) = default;
};

/// A dyadic numerator / 2^exponent in canonical form (numerator odd, or 0/2^0).
struct DyadicRational {
  Nat numerator;
  unsigned exponent = 0;

  PosRational value() const { return PosRational(numerator, pow2(exponent)); }
  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
};

/// The 1/0 entry closing every Stern-Brocot row.
struct Infinity {
  friend bool operator==(Infinity, Infinity) { return true; }
};
using BrocotEntry = std::variant<PosRational, Infinity>;

/// t(n) for n >= 1; throws DomainError for n = 0.
PosRational rational_of_index(const Nat& n);

/// Odd-length continued fraction of x >= 1. An even-length Euclidean
/// expansion has its last quotient a split into (a - 1, 1).
CFrac to_odd_cfrac(const PosRational& x);

/// The unique n >= 1 with t(n) = x.
Nat index_of_rational(const PosRational& x, unsigned max_index_bits = kDefaultIndexBits);

struct BitReversal {
  Nat value;
  /// n was even, so its trailing zeros disappeared in the reversal.
  bool dropped_trailing_zeros = false;
};

/// Integer whose binary digits are those of n in reverse order. n >= 1.
BitReversal reverse_bits(const Nat& n);

/// s(k)/s(2^r - k) for k = 0..2^r; the last entry is Infinity.
std::vector<BrocotEntry> brocot_row(unsigned r, unsigned max_row_bits = kDefaultRowBits);

/// ?(x) for x in [0, 1], by mediant descent from (0/1, 1/1).
DyadicRational minkowski_q(const PosRational& x, unsigned max_depth = kDefaultIndexBits);

}  // namespace stern
