#include <doctest.h>

#include "oracle.hpp"
#include "stern/sequence.hpp"

#include <numeric>

using namespace stern;

namespace {
const std::vector<std::uint64_t>& table() {
  static const auto s = oracle::stern_values((1U << 16) + 2);
  return s;
}
}  // namespace

TEST_CASE("stern values") {
  CHECK(stern::stern(Nat(0)) == 0);
  CHECK(stern::stern(Nat(11)) == 5);
  CHECK(stern::stern(pow2(20)) == 1);
  for (std::uint64_t n = 0; n < (1U << 16); ++n) REQUIRE(stern::stern(Nat(n)) == table()[n]);
  // s(2^r - 1) = r and s(2^r + 1) = r + 1 far beyond any word size.
  CHECK(stern::stern(pow2(200) - 1) == 200);
  CHECK(stern::stern(pow2(200) + 1) == 201);
}

TEST_CASE("stern pairs") {
  CHECK(stern_pair(Nat(0)) == SternPair{Nat(0), Nat(1)});
  CHECK(stern_pair(Nat(11)) == SternPair{Nat(5), Nat(2)});
  CHECK(stern_pair(Nat(5)) == SternPair{Nat(3), Nat(2)});
  for (std::uint64_t n = 0; n < (1U << 16); ++n) {
    const auto [a, b] = stern_pair_u64(n);
    REQUIRE(a == table()[n]);
    REQUIRE(b == table()[n + 1]);
    REQUIRE(std::gcd(a, b) == 1);
  }
}

TEST_CASE("ratios") {
  CHECK(stern_ratio(Nat(11)).str() == "5/2");
  CHECK(stern_ratio(Nat(6)).str() == "2/3");
  CHECK(stern_ratio(Nat(0)).str() == "0/1");
  for (unsigned r = 1; r <= 10; ++r) CHECK(stern_ratio(pow2(r) - 1) == PosRational(Nat(r)));
}

TEST_CASE("table and stream agree with the recurrence") {
  const auto s = stern_table(5000);
  SternStream stream;
  for (std::uint64_t n = 0; n < 5000; ++n) {
    REQUIRE(s[n] == table()[n]);
    REQUIRE(stream.index() == n);
    REQUIRE(stream.current() == table()[n]);
    stream.advance();
  }
  SternStream mid(12345);
  CHECK(mid.current() == table()[12345]);
  CHECK(mid.next_value() == table()[12346]);
}

TEST_CASE("diatomic rows") {
  CHECK(diatomic_row(3, Nat(0), Nat(1)) == std::vector<Nat>{0, 1, 1, 2, 1, 3, 2, 3, 1});
  CHECK(diatomic_row(1, Nat(4), Nat(9)) == std::vector<Nat>{4, 13, 9});
  CHECK(diatomic_row(2, Nat(1), Nat(1)) == std::vector<Nat>{1, 3, 2, 3, 1});
  for (unsigned r = 0; r <= 10; ++r) {
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        REQUIRE(diatomic_row(r, Nat(a), Nat(b)) == oracle::insertion_row(r, a, b));
      }
    }
  }
  CHECK_THROWS_AS(diatomic_row(22, Nat(0), Nat(1)), ResourceError);
  CHECK_THROWS_AS(diatomic_row(5, Nat(0), Nat(1), 5), ResourceError);
  CHECK(diatomic_row(5, Nat(0), Nat(1), 6).size() == 33);
}

TEST_CASE("block identity") {
  CHECK(stern_block(3, Nat(1), Nat(3)) == 5);
  CHECK(stern_block(2, Nat(3), Nat(2)) == table()[14]);
  CHECK(stern_block(7, Nat(100), Nat(0)) == stern::stern(Nat(100)));
  for (unsigned r = 0; r <= 6; ++r) {
    for (std::uint64_t n = 0; n < 64; ++n) {
      for (std::uint64_t k = 0; k <= (1U << r); ++k) {
        REQUIRE(stern_block(r, Nat(n), Nat(k)) == table()[(n << r) + k]);
      }
    }
  }
  CHECK_THROWS_AS(stern_block(3, Nat(1), Nat(9)), DomainError);
}

TEST_CASE("block decomposition") {
  const auto thirteen = block_decompose(Nat(13));
  REQUIRE(thirteen.size() == 3);
  CHECK(thirteen[0] == Block{3, Nat(0)});
  CHECK(thirteen[1] == Block{2, Nat(2)});
  CHECK(thirteen[2] == Block{0, Nat(12)});
  CHECK(block_decompose(pow2(10)) == BlockDecomposition{Block{10, Nat(0)}});
  const auto seven = block_decompose(Nat(7));
  CHECK(seven == BlockDecomposition{Block{2, Nat(0)}, Block{1, Nat(2)}, Block{0, Nat(6)}});
  CHECK_THROWS_AS(block_decompose(Nat(0)), DomainError);

  for (std::uint64_t N = 1; N < 3000; ++N) {
    const auto blocks = block_decompose(Nat(N));
    Nat at = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      REQUIRE(blocks[j].begin() == at);
      if (j > 0) REQUIRE(blocks[j].exponent < blocks[j - 1].exponent);
      at = blocks[j].end();
    }
    REQUIRE(at == N);
  }
}
