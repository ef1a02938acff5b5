#include "stern/sequence.hpp"

namespace stern {

SternPair stern_pair(const Nat& n) {
  require_nat(n, "n");
  if (n == 0) return {Nat(0), Nat(1)};
  // Leading bit: (s(1), s(2)) = (1, 1). Each further bit b maps the pair of
  // m to the pair of 2m + b.
  Nat a = 1;
  Nat b = 1;
  for (unsigned i = bit_length(n) - 1; i-- > 0;) {
    if (mp::bit_test(n, i)) {
      a += b;
    } else {
      b += a;
    }
  }
  return {std::move(a), std::move(b)};
}

Nat stern(const Nat& n) { return stern_pair(n).left; }

PosRational stern_ratio(const Nat& n) {
  auto [left, right] = stern_pair(n);
  return PosRational(std::move(left), std::move(right));
}

std::pair<std::uint64_t, std::uint64_t> stern_pair_u64(std::uint64_t n) {
  if (n == 0) return {0, 1};
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  for (int i = 62 - __builtin_clzll(n); i >= 0; --i) {
    if ((n >> i) & 1U) {
      a += b;
    } else {
      b += a;
    }
  }
  return {a, b};
}

std::vector<std::uint64_t> stern_table(std::size_t count) {
  std::vector<std::uint64_t> s(count);
  if (count > 1) s[1] = 1;
  for (std::size_t n = 2; n < count; ++n) {
    std::size_t h = n / 2;
    s[n] = (n % 2 == 0) ? s[h] : s[h] + s[h + 1];
  }
  return s;
}

SternStream::SternStream(std::uint64_t n) : index_(n) {
  auto [a, b] = stern_pair_u64(n);
  current_ = a;
  next_ = b;
}

void SternStream::advance() {
  std::uint64_t after = current_ + next_ - 2 * (current_ % next_);
  current_ = next_;
  next_ = after;
  ++index_;
}

std::vector<Nat> diatomic_row(unsigned r, const Nat& a, const Nat& b, unsigned max_row_bits) {
  require_nat(a, "a");
  require_nat(b, "b");
  // 2^r + 1 entries must not exceed 2^max_row_bits.
  if (r >= max_row_bits || r >= 40) {
    throw ResourceError("diatomic row r=" + std::to_string(r) + " exceeds the row cap of 2^" +
                        std::to_string(max_row_bits) + " entries");
  }
  const std::size_t width = std::size_t{1} << r;
  const auto s = stern_table(width + 1);
  std::vector<Nat> row;
  row.reserve(width + 1);
  for (std::size_t k = 0; k <= width; ++k) {
    row.push_back(Nat(s[width - k]) * a + Nat(s[k]) * b);
  }
  return row;
}

Nat stern_block(unsigned r, const Nat& n, const Nat& k) {
  require_nat(n, "n");
  require_nat(k, "k");
  const Nat width = pow2(r);
  if (k > width) throw DomainError("stern_block needs 0 <= k <= 2^r");
  auto [sn, sn1] = stern_pair(n);
  return stern(width - k) * sn + stern(k) * sn1;
}

BlockDecomposition block_decompose(const Nat& N) {
  require_nat(N, "N");
  if (N == 0) throw DomainError("block decomposition needs N >= 1");
  BlockDecomposition blocks;
  Nat covered = 0;  // N_{j-1}
  for (unsigned i = bit_length(N); i-- > 0;) {
    if (!mp::bit_test(N, i)) continue;
    blocks.push_back({i, covered >> i});
    covered += pow2(i);
  }
  return blocks;
}

}  // namespace stern
