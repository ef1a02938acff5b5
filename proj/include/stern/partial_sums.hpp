#pragma once

// Sums of t(n) = s(n)/s(n+1): row sums A(r), prefix row sums, exact and
// compensated floating prefix sums with the 3N/2 bounds, and empirical
// averages of s(n)/s(n+t).

#include "stern/arith.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stern {

inline constexpr std::uint64_t kDefaultMaxExactN = std::uint64_t{1} << 20;
/// Float sums stream one term per index; beyond this they are refused.
inline constexpr std::uint64_t kMaxFloatN = std::uint64_t{1} << 40;

enum class SumMode { Exact, Float };

struct SumBounds {
  Rational lower;  // 3N/2 - (r^2 + 7r + 6)/4
  Rational upper;  // 3N/2 - 1/2 (strict)
};

struct SumReport {
  Nat N;
  std::optional<PosRational> exact_sum;
  std::optional<double> float_sum;
  /// Bound on |float_sum - true sum| when float_sum is present.
  double float_error_bound = 0.0;
  /// Present for N >= 1, with r = floor(log2 N).
  std::optional<SumBounds> bounds;
};

/// A(r) = sum_{2^r <= n < 2^{r+1}} t(n) = (3/2) 2^r - 1/2.
PosRational row_sum(unsigned r);
/// sum_{n < 2^r} t(n) = (3/2) 2^r - (r + 3)/2.
PosRational prefix_row_sum(unsigned r);

/// The bounds on sum_{n<N} t(n) for N >= 1.
SumBounds average_bounds(const Nat& N);

/// sum_{n<N} t(n). Exact mode throws ResourceError above max_exact_n.
SumReport t_prefix_sum(const Nat& N, SumMode mode, const Nat& max_exact_n = kDefaultMaxExactN);

/// Exact sum_{U1 <= n < U2} t(n): numerators are grouped by denominator
/// s(n+1) and combined over their least common multiple.
PosRational exact_range_sum(std::uint64_t U1, std::uint64_t U2);

/// Exact prefix sums at each requested N (any order), in one sweep.
std::vector<PosRational> exact_prefix_sums(std::span<const std::uint64_t> Ns);

/// (1/N) sum_{n<N} s(n)/s(n+t), compensated. Empirical: existence of the
/// limit is only known for t = 1.
double alpha_estimate(unsigned t, const Nat& N);

}  // namespace stern
