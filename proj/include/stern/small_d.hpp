#pragma once

// Exact structure for d = 2 and d = 3: parity of s(n), the set
// A3 = {n : 3 | s(n)}, its per-row counts a_r and the closed forms driven by
// mu = (-1 + sqrt(7) i)/2, the difference Delta(N) = T(N;3,1) - T(N;3,2),
// and hyperbinary representation counts b(d;n).

#include "stern/arith.hpp"
#include "stern/modular.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace stern {

/// Largest a3_enumerate limit accepted by default.
inline constexpr std::uint64_t kDefaultA3Limit = std::uint64_t{1} << 28;
/// Largest bit length accepted by hyperbinary.
inline constexpr unsigned kDefaultHyperbinaryBits = 4096;

/// (re2 + im2 * sqrt(7) i) / 2, with re2 = im2 (mod 2) so the ring generated
/// by mu is closed under multiplication.
class ComplexExact {
 public:
  ComplexExact() = default;
  ComplexExact(Int re2, Int im2);

  /// mu = (-1 + sqrt(7) i)/2.
  static ComplexExact mu() { return {Int(-1), Int(1)}; }
  static ComplexExact one() { return {Int(2), Int(0)}; }

  const Int& re2() const { return re2_; }
  const Int& im2() const { return im2_; }
  ComplexExact conj() const { return {re2_, -im2_}; }
  ComplexExact pow(unsigned r) const;

  friend ComplexExact operator+(const ComplexExact& a, const ComplexExact& b);
  friend ComplexExact operator*(const ComplexExact& a, const ComplexExact& b);
  friend bool operator==(const ComplexExact&, const ComplexExact&) = default;

 private:
  Int re2_ = 0;
  Int im2_ = 0;
};

/// s(n) is even exactly when 3 | n.
bool even_stern_index(const Nat& n);

/// Membership in A3 by reducing n through 2n', 8n' +- 5, 8n' +- 7.
bool a3_member(const Nat& n);

/// Members of A3 below limit, generated from {0, 5, 7} by n -> 2n, 8n +- 5,
/// 8n +- 7 (for n > 0). Sorted.
std::vector<Nat> a3_enumerate(const Nat& limit, std::uint64_t max_limit = kDefaultA3Limit);

/// a_r = #(A3 cap [2^r, 2^{r+1})) by a_r = a_{r-1} + 4 a_{r-3}.
Nat a3_row_count(unsigned r);
/// a_r from 2^r/4 + 2 Re(((-7 + 5 sqrt(7) i)/56) mu^r), evaluated exactly.
Nat a3_row_count_closed(unsigned r);

/// T(2^r; 3, 0) from 2^r/4 + 2 Re(((7 - sqrt(7) i)/56) mu^r) + 1/2, exactly.
Nat t3_zero_closed(unsigned r);

/// Delta(N) = T(N;3,1) - T(N;3,2). Uses the residue table for N <= 2^22
/// and the per-index bit descent above that.
Int delta3(const Nat& N);
/// Same value, always by per-index bit descent.
Int delta3_descent(std::uint64_t N);
/// Delta(0), ..., Delta(N) from the residue table.
std::vector<int> delta3_trace(std::uint64_t N);

/// Predicted (Delta(2m), Delta(2m+1)) from S_3(m).
std::pair<int, int> delta3_classify(const Nat& m);

struct DeltaFrequencies {
  std::array<std::uint64_t, 4> counts{};  // Delta(n) = 0, 1, 2, 3
  std::uint64_t outside = 0;              // any other value
  std::uint64_t total = 0;
};
/// How often Delta(n) takes each value, over 0 <= n < N.
DeltaFrequencies delta3_frequencies(std::uint64_t N);

/// b(d;n): representations n = sum e_k 2^k with digits e_k in {0..d-1}.
Nat hyperbinary(Modulus d, const Nat& n, unsigned max_bits = kDefaultHyperbinaryBits);

struct DifferenceRange {
  Int min;
  Int max;
};
/// Extremes of T(N;d,a) - T(N;d,b) over 0 <= N <= limit.
DifferenceRange residue_difference_range(Modulus d, Modulus a, Modulus b, std::uint64_t limit);

}  // namespace stern
