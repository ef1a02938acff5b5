#include <doctest.h>

#include "oracle.hpp"
#include "stern/partial_sums.hpp"

#include <cmath>

using namespace stern;

namespace {

// sum_{U1 <= n < U2} s(n)/s(n+1) by plain rational accumulation.
oracle::BigRat direct_sum(std::uint64_t U1, std::uint64_t U2) {
  static const auto s = oracle::stern_values((1U << 14) + 2);
  oracle::BigRat total = 0;
  for (std::uint64_t n = U1; n < U2; ++n) total += oracle::BigRat(s[n], s[n + 1]);
  return total;
}

}  // namespace

TEST_CASE("row sums") {
  CHECK(row_sum(0).str() == "1/1");
  CHECK(row_sum(2).str() == "11/2");
  CHECK(row_sum(3).str() == "23/2");
  CHECK(prefix_row_sum(3).str() == "9/1");
  CHECK(prefix_row_sum(0).str() == "0/1");
  CHECK(prefix_row_sum(1).str() == "1/1");
  for (unsigned r = 0; r <= 12; ++r) {
    REQUIRE(row_sum(r).to_rational() == direct_sum(1U << r, 2U << r));
    REQUIRE(prefix_row_sum(r).to_rational() == direct_sum(0, 1U << r));
  }
}

TEST_CASE("exact range sums match plain accumulation") {
  for (std::uint64_t U1 : {0ULL, 5ULL, 1000ULL}) {
    for (std::uint64_t U2 : {U1 + 1, U1 + 77, U1 + 4000}) {
      REQUIRE(exact_range_sum(U1, U2).to_rational() == direct_sum(U1, U2));
    }
  }
  const std::vector<std::uint64_t> Ns = {300, 1, 8, 5000, 8};
  const auto sums = exact_prefix_sums(Ns);
  for (std::size_t k = 0; k < Ns.size(); ++k) REQUIRE(sums[k].to_rational() == direct_sum(0, Ns[k]));
}

TEST_CASE("prefix sum reports") {
  const SumReport eight = t_prefix_sum(Nat(8), SumMode::Exact);
  REQUIRE(eight.exact_sum);
  CHECK(eight.exact_sum->str() == "9/1");
  CHECK(t_prefix_sum(Nat(1), SumMode::Exact).exact_sum->is_zero());
  CHECK_FALSE(t_prefix_sum(Nat(0), SumMode::Exact).bounds);

  const SumReport fl = t_prefix_sum(pow2(16), SumMode::Float);
  REQUIRE(fl.float_sum);
  REQUIRE(fl.bounds);
  CHECK(Rational(*fl.float_sum) >= fl.bounds->lower);
  CHECK(Rational(*fl.float_sum) < fl.bounds->upper);

  for (std::uint64_t N : {1ULL, 3ULL, 1000ULL, 12345ULL}) {
    const auto exact = t_prefix_sum(Nat(N), SumMode::Exact).exact_sum->to_double();
    const auto f = t_prefix_sum(Nat(N), SumMode::Float);
    REQUIRE(std::abs(*f.float_sum - exact) <= f.float_error_bound + 1e-300);
  }
  CHECK_THROWS_AS(t_prefix_sum(Nat(100), SumMode::Exact, Nat(99)), ResourceError);
  CHECK_THROWS_AS(t_prefix_sum(pow2(41), SumMode::Float), ResourceError);
}

TEST_CASE("average bounds") {
  const SumBounds b = average_bounds(Nat(8));
  CHECK(b.lower == Rational(12) - Rational(9 + 21 + 6, 4));
  CHECK(b.upper == Rational(23, 2));
  CHECK_THROWS_AS(average_bounds(Nat(0)), DomainError);
  for (std::uint64_t N = 1; N <= 2000; ++N) {
    const SumBounds bn = average_bounds(Nat(N));
    const oracle::BigRat v = direct_sum(0, N);
    REQUIRE(bn.lower <= v);
    REQUIRE(v < bn.upper);
  }
}

TEST_CASE("shifted averages") {
  CHECK(alpha_estimate(1, Nat(1U << 12)) == doctest::Approx(1.5).epsilon(0.01));
  CHECK_THROWS_AS(alpha_estimate(0, Nat(10)), DomainError);
  CHECK_THROWS_AS(alpha_estimate(5, Nat(3)), DomainError);
  // Direct average for a small N.
  const auto s = oracle::stern_values(200);
  double direct = 0.0;
  for (std::uint64_t n = 0; n < 100; ++n) direct += static_cast<double>(s[n]) / static_cast<double>(s[n + 3]);
  CHECK(alpha_estimate(3, Nat(100)) == doctest::Approx(direct / 100));
}
