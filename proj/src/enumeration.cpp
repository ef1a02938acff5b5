#include "stern/enumeration.hpp"

#include <algorithm>

namespace stern {

PosRational CFrac::value() const {
  if (quotients.empty()) throw DomainError("empty continued fraction");
  PosRational acc(quotients.back());
  for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) {
    acc = PosRational(*it) + acc.reciprocal();
  }
  return acc;
}

Nat CFrac::quotient_sum() const {
  Nat total = 0;
  for (const auto& q : quotients) total += q;
  return total;
}

PosRational rational_of_index(const Nat& n) {
  require_nat(n, "n");
  if (n == 0) throw DomainError("the enumeration starts at n = 1");
  return stern_ratio(n);
}

CFrac to_odd_cfrac(const PosRational& x) {
  if (x.num() < x.den()) throw DomainError("to_odd_cfrac needs x >= 1; mirror x first");
  CFrac cf;
  Nat p = x.num();
  Nat q = x.den();
  while (q != 0) {
    Nat a = p / q;
    Nat rem = p - a * q;
    cf.quotients.push_back(std::move(a));
    p = std::move(q);
    q = std::move(rem);
  }
  if (cf.quotients.size() % 2 == 0) {
    // The last Euclidean quotient is >= 2 whenever the length exceeds one.
    cf.quotients.back() -= 1;
    cf.quotients.push_back(Nat(1));
  }
  return cf;
}

Nat index_of_rational(const PosRational& x, unsigned max_index_bits) {
  if (x.is_zero()) throw DomainError("0 is not in the enumeration");
  if (x.num() < x.den()) {
    // t(2^r + k) t(2^{r+1} - k - 1) = 1 pairs m with 3 * 2^r - m - 1.
    Nat m = index_of_rational(x.reciprocal(), max_index_bits);
    return 3 * pow2(bit_length(m) - 1) - m - 1;
  }
  CFrac cf = to_odd_cfrac(x);
  if (cf.quotient_sum() > max_index_bits) {
    throw ResourceError("index of " + x.str() + " exceeds 2^" + std::to_string(max_index_bits));
  }
  // Most significant run first: the last quotient gives the leading ones,
  // runs alternate ones and zeros, the first quotient gives the trailing ones.
  Nat n = 0;
  bool ones = true;
  for (auto it = cf.quotients.rbegin(); it != cf.quotients.rend(); ++it) {
    const auto len = it->convert_to<unsigned>();
    n <<= len;
    if (ones) n += pow2(len) - 1;
    ones = !ones;
  }
  return n;
}

BitReversal reverse_bits(const Nat& n) {
  require_nat(n, "n");
  if (n == 0) throw DomainError("reverse_bits needs n >= 1");
  BitReversal out;
  out.dropped_trailing_zeros = !mp::bit_test(n, 0);
  const unsigned len = bit_length(n);
  out.value = 0;
  for (unsigned i = 0; i < len; ++i) {
    if (mp::bit_test(n, i)) mp::bit_set(out.value, len - 1 - i);
  }
  return out;
}

std::vector<BrocotEntry> brocot_row(unsigned r, unsigned max_row_bits) {
  if (r >= max_row_bits || r >= 40) {
    throw ResourceError("Stern-Brocot row r=" + std::to_string(r) + " exceeds the row cap of 2^" +
                        std::to_string(max_row_bits) + " entries");
  }
  const std::size_t width = std::size_t{1} << r;
  const auto s = stern_table(width + 1);
  std::vector<BrocotEntry> row;
  row.reserve(width + 1);
  for (std::size_t k = 0; k < width; ++k) {
    row.emplace_back(PosRational(Nat(s[k]), Nat(s[width - k])));
  }
  row.emplace_back(Infinity{});
  return row;
}

DyadicRational minkowski_q(const PosRational& x, unsigned max_depth) {
  if (x.num() > x.den()) throw DomainError("minkowski_q is defined on [0, 1]");
  if (x.is_zero()) return {Nat(0), 0};
  if (x.num() == x.den()) return {Nat(1), 0};
  // Invariant: x lies strictly between lo and hi, and ?(lo), ?(hi) are
  // position/2^depth and (position + 1)/2^depth.
  Nat lo_num = 0, lo_den = 1;
  Nat hi_num = 1, hi_den = 1;
  Nat position = 0;
  for (unsigned depth = 0; depth < max_depth; ++depth) {
    Nat med_num = lo_num + hi_num;
    Nat med_den = lo_den + hi_den;
    Nat lhs = x.num() * med_den;
    Nat rhs = med_num * x.den();
    position <<= 1;
    if (lhs == rhs) return {position + 1, depth + 1};
    if (lhs < rhs) {
      hi_num = std::move(med_num);
      hi_den = std::move(med_den);
    } else {
      position += 1;
      lo_num = std::move(med_num);
      lo_den = std::move(med_den);
    }
  }
  throw ResourceError("mediant descent for " + x.str() + " exceeds depth " +
                      std::to_string(max_depth));
}

}  // namespace stern
