#include "stern/partial_sums.hpp"

#include "stern/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stern {

PosRational row_sum(unsigned r) { return PosRational(3 * pow2(r) - 1, Nat(2)); }

PosRational prefix_row_sum(unsigned r) { return PosRational(3 * pow2(r) - (r + 3), Nat(2)); }

SumBounds average_bounds(const Nat& N) {
  require_nat(N, "N");
  if (N == 0) throw DomainError("average bounds need N >= 1");
  const Int r = bit_length(N) - 1;
  const Rational three_halves_n = Rational(3 * N, 2);
  return {three_halves_n - Rational(r * r + 7 * r + 6, 4), three_halves_n - Rational(1, 2)};
}

namespace {

// Numerator sums grouped by denominator: sum_q numerators[q] / q.
class GroupedSum {
 public:
  void add(std::uint64_t num, std::uint64_t den) {
    if (den >= numerators_.size()) numerators_.resize(den + 1, 0);
    numerators_[den] += num;
  }

  PosRational value() const {
    Nat lcm = 1;
    for (std::size_t q = 1; q < numerators_.size(); ++q) {
      if (numerators_[q] == 0) continue;
      const Nat g = mp::gcd(lcm, Nat(q));
      if (g != q) lcm = lcm / g * q;
    }
    Nat num = 0;
    for (std::size_t q = 1; q < numerators_.size(); ++q) {
      if (numerators_[q] == 0) continue;
      num += Nat(numerators_[q]) * (lcm / q);
    }
    return PosRational(std::move(num), std::move(lcm));
  }

 private:
  std::vector<std::uint64_t> numerators_;
};

}  // namespace

PosRational exact_range_sum(std::uint64_t U1, std::uint64_t U2) {
  GroupedSum sum;
  SternStream stream(U1);
  for (std::uint64_t n = U1; n < U2; ++n) {
    sum.add(stream.current(), stream.next_value());
    stream.advance();
  }
  return sum.value();
}

std::vector<PosRational> exact_prefix_sums(std::span<const std::uint64_t> Ns) {
  std::vector<std::size_t> order(Ns.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return Ns[a] < Ns[b]; });
  std::vector<PosRational> out(Ns.size());
  GroupedSum sum;
  SternStream stream;
  for (std::size_t idx : order) {
    while (stream.index() < Ns[idx]) {
      sum.add(stream.current(), stream.next_value());
      stream.advance();
    }
    out[idx] = sum.value();
  }
  return out;
}

SumReport t_prefix_sum(const Nat& N, SumMode mode, const Nat& max_exact_n) {
  require_nat(N, "N");
  SumReport report;
  report.N = N;
  if (N >= 1) report.bounds = average_bounds(N);
  if (mode == SumMode::Exact) {
    if (N > max_exact_n) {
      throw ResourceError("exact prefix sums are capped at N <= " + max_exact_n.str() +
                          "; use float mode");
    }
    report.exact_sum = exact_range_sum(0, N.convert_to<std::uint64_t>());
    return report;
  }
  if (N > kMaxFloatN) throw ResourceError("float prefix sums are capped at N <= 2^40");
  const auto n_terms = N.convert_to<std::uint64_t>();
  // Neumaier summation; every term is positive.
  double sum = 0.0;
  double carry = 0.0;
  SternStream stream;
  for (std::uint64_t n = 0; n < n_terms; ++n) {
    const double term =
        static_cast<double>(stream.current()) / static_cast<double>(stream.next_value());
    const double t = sum + term;
    carry += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    stream.advance();
  }
  const double total = sum + carry;
  const double u = std::numeric_limits<double>::epsilon() / 2;
  const double n = static_cast<double>(n_terms);
  report.float_sum = total;
  report.float_error_bound = (3 * u + 4 * n * u * u) * total * (1 + 4 * u);
  return report;
}

double alpha_estimate(unsigned t, const Nat& N) {
  if (t < 1) throw DomainError("alpha_estimate needs t >= 1");
  require_nat(N, "N");
  if (N < t || N == 0) throw DomainError("alpha_estimate needs N >= max(t, 1)");
  if (N > kMaxFloatN) throw ResourceError("alpha_estimate is capped at N <= 2^40");
  const auto n_terms = N.convert_to<std::uint64_t>();
  const std::size_t width = t + 1;
  std::vector<std::uint64_t> window(width);
  SternStream stream;
  for (std::size_t k = 0; k < width; ++k) {
    window[k] = stream.current();
    stream.advance();
  }
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint64_t n = 0; n < n_terms; ++n) {
    const double term = static_cast<double>(window[n % width]) /
                        static_cast<double>(window[(n + t) % width]);
    const double next = sum + term;
    carry += (std::abs(sum) >= std::abs(term)) ? (sum - next) + term : (term - next) + sum;
    sum = next;
    window[n % width] = stream.current();
    stream.advance();
  }
  return (sum + carry) / static_cast<double>(n_terms);
}

}  // namespace stern
