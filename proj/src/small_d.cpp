#include "stern/small_d.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace stern {

ComplexExact::ComplexExact(Int re2, Int im2) : re2_(std::move(re2)), im2_(std::move(im2)) {
  if (((re2_ - im2_) & 1) != 0) throw DomainError("ComplexExact needs re2 = im2 mod 2");
}

ComplexExact operator+(const ComplexExact& a, const ComplexExact& b) {
  return {a.re2_ + b.re2_, a.im2_ + b.im2_};
}

ComplexExact operator*(const ComplexExact& a, const ComplexExact& b) {
  // ((a + b w)/2)((c + e w)/2) with w^2 = -7.
  const Int re4 = a.re2_ * b.re2_ - 7 * a.im2_ * b.im2_;
  const Int im4 = a.re2_ * b.im2_ + a.im2_ * b.re2_;
  return {re4 / 2, im4 / 2};
}

ComplexExact ComplexExact::pow(unsigned r) const {
  ComplexExact result = one();
  ComplexExact base = *this;
  while (r > 0) {
    if (r & 1U) result = result * base;
    r >>= 1;
    if (r > 0) base = base * base;
  }
  return result;
}

bool even_stern_index(const Nat& n) {
  require_nat(n, "n");
  return n % 3 == 0;
}

bool a3_member(const Nat& n_in) {
  require_nat(n_in, "n");
  Nat n = n_in;
  while (true) {
    if (n == 0 || n == 5 || n == 7) return true;
    if (n == 1 || n == 3) return false;
    if (mp::bit_test(n, 0) == false) {
      n >>= 1;
      continue;
    }
    // s(8n' +- 5) = 2 s(n') mod 3 and s(8n' +- 7) = s(n') mod 3.
    switch (static_cast<unsigned>(n % 8)) {
      case 3: n = (n + 5) / 8; break;
      case 5: n = (n - 5) / 8; break;
      case 1: n = (n + 7) / 8; break;
      default: n = (n - 7) / 8; break;
    }
  }
}

std::vector<Nat> a3_enumerate(const Nat& limit_in, std::uint64_t max_limit) {
  require_nat(limit_in, "limit");
  if (limit_in > max_limit) {
    throw ResourceError("a3 enumeration limit exceeds " + std::to_string(max_limit));
  }
  const auto limit = limit_in.convert_to<std::uint64_t>();
  std::vector<bool> member(limit, false);
  for (std::uint64_t seed : {0, 5, 7}) {
    if (seed < limit) member[seed] = true;
  }
  // Every image of n > 1 exceeds n, so one increasing sweep closes the set.
  for (std::uint64_t n = 1; n < limit; ++n) {
    if (!member[n]) continue;
    for (std::uint64_t image : {2 * n, 8 * n - 7, 8 * n - 5, 8 * n + 5, 8 * n + 7}) {
      if (image < limit) member[image] = true;
    }
  }
  std::vector<Nat> out;
  for (std::uint64_t n = 0; n < limit; ++n) {
    if (member[n]) out.emplace_back(n);
  }
  return out;
}

Nat a3_row_count(unsigned r) {
  // a_0, a_1, a_2 = 0, 0, 2 seed a_r = a_{r-1} + 4 a_{r-3}.
  std::array<Nat, 3> window = {Nat(0), Nat(0), Nat(2)};
  if (r < 3) return window[r];
  for (unsigned k = 3; k <= r; ++k) {
    Nat next = window[2] + 4 * window[0];
    window = {window[1], window[2], std::move(next)};
  }
  return window[2];
}

namespace {

// 56 * (2^r/4) + x, where c * mu^r = (x + y sqrt(7) i)/2 so that
// c mu^r + conj(c mu^r) = x; divides the total by 56 exactly.
Nat closed_form_over_56(unsigned r, const ComplexExact& c, const Int& constant56) {
  const ComplexExact term = c * ComplexExact::mu().pow(r);
  const Int total = 14 * pow2(r) + term.re2() + constant56;
  if (total % 56 != 0 || total < 0) {
    throw NumericalError("closed form did not reduce to a nonnegative integer");
  }
  return total / 56;
}

}  // namespace

Nat a3_row_count_closed(unsigned r) {
  // 56 * (-7 + 5 sqrt(7) i)/56 = (-14 + 10 sqrt(7) i)/2.
  return closed_form_over_56(r, ComplexExact(Int(-14), Int(10)), Int(0));
}

Nat t3_zero_closed(unsigned r) {
  // 56 * (7 - sqrt(7) i)/56 = (14 - 2 sqrt(7) i)/2; the 1/2 becomes 28/56.
  return closed_form_over_56(r, ComplexExact(Int(14), Int(-2)), Int(28));
}

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;
constexpr std::uint64_t kTraceLimit = std::uint64_t{1} << 26;

// s(n) mod 3 for n < count, by the defining recurrence on residues.
std::vector<std::uint8_t> residues_mod3(std::uint64_t count) {
  std::vector<std::uint8_t> r(count + 1, 0);
  if (count >= 1) r[1] = 1;
  for (std::uint64_t n = 2; n <= count; ++n) {
    const std::uint64_t h = n / 2;
    r[n] = (n % 2 == 0) ? r[h] : static_cast<std::uint8_t>((r[h] + r[h + 1]) % 3);
  }
  r.resize(count);
  return r;
}

int delta_step(unsigned residue) { return residue == 1 ? 1 : (residue == 2 ? -1 : 0); }

}  // namespace

Int delta3_descent(std::uint64_t N) {
  std::int64_t delta = 0;
  for (std::uint64_t n = 0; n < N; ++n) delta += delta_step(s_mod_pair(n, 3).i);
  return Int(delta);
}

std::vector<int> delta3_trace(std::uint64_t N) {
  if (N >= kTraceLimit) throw ResourceError("delta3 trace limited to N < 2^26");
  const auto r = residues_mod3(N);
  std::vector<int> trace(N + 1, 0);
  for (std::uint64_t n = 0; n < N; ++n) trace[n + 1] = trace[n] + delta_step(r[n]);
  return trace;
}

Int delta3(const Nat& N) {
  const std::uint64_t n = to_u64(N, "N");
  if (n <= kTableLimit) return Int(delta3_trace(n).back());
  return delta3_descent(n);
}

std::pair<int, int> delta3_classify(const Nat& m) {
  const ResiduePair p = s_mod_pair(m, 3);
  if (p.i == 0) return p.j == 1 ? std::pair{0, 0} : std::pair{3, 3};
  if (p.i == 1) return {1, 2};
  return {2, 1};
}

DeltaFrequencies delta3_frequencies(std::uint64_t N) {
  DeltaFrequencies out;
  std::int64_t delta = 0;
  SternStream stream;
  for (std::uint64_t n = 0; n < N; ++n) {
    if (delta >= 0 && delta <= 3) {
      ++out.counts[static_cast<std::size_t>(delta)];
    } else {
      ++out.outside;
    }
    ++out.total;
    delta += delta_step(static_cast<unsigned>(stream.current() % 3));
    stream.advance();
  }
  return out;
}

namespace {

struct HyperbinaryMemo {
  Modulus d;
  std::map<Nat, Nat> memo;

  Nat operator()(const Nat& n) {
    if (n == 0) return Nat(1);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Nat total = 0;
    const unsigned parity = mp::bit_test(n, 0) ? 1U : 0U;
    for (Modulus digit = parity; digit < d && digit <= n; digit += 2) {
      total += (*this)((n - digit) >> 1);
    }
    memo.emplace(n, total);
    return total;
  }
};

}  // namespace

Nat hyperbinary(Modulus d, const Nat& n, unsigned max_bits) {
  require_modulus(d);
  require_nat(n, "n");
  if (bit_length(n) > max_bits) {
    throw ResourceError("hyperbinary is limited to n below 2^" + std::to_string(max_bits));
  }
  return HyperbinaryMemo{d, {}}(n);
}

DifferenceRange residue_difference_range(Modulus d, Modulus a, Modulus b, std::uint64_t limit) {
  require_modulus(d);
  if (a >= d || b >= d) throw DomainError("residues must lie in [0, d)");
  std::int64_t diff = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  SternStream stream;
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto residue = static_cast<Modulus>(stream.current() % d);
    if (residue == a) ++diff;
    if (residue == b) --diff;
    lo = std::min(lo, diff);
    hi = std::max(hi, diff);
    stream.advance();
  }
  return {Int(lo), Int(hi)};
}

}  // namespace stern
