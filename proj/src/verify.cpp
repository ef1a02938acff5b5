#include "stern/verify.hpp"

#include "stern/enumeration.hpp"
#include "stern/modular.hpp"
#include "stern/partial_sums.hpp"
#include "stern/sequence.hpp"
#include "stern/small_d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace stern {

namespace {

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    if (ok) {
      ++result_.passed;
      return;
    }
    ++result_.failed;
    if (result_.failures.size() < 10) result_.failures.push_back(what);
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string at(std::string_view label, std::uint64_t a) {
  return std::string(label) + " at " + std::to_string(a);
}

std::string at(std::string_view label, std::uint64_t a, std::uint64_t b) {
  return std::string(label) + " at (" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

// Z(r,k;a,b) by the closed form on a precomputed Stern table.
std::uint64_t diatomic(const std::vector<std::uint64_t>& s, unsigned r, std::uint64_t k,
                       std::uint64_t a, std::uint64_t b) {
  return s[(std::uint64_t{1} << r) - k] * a + s[k] * b;
}

SuiteResult core_suite() {
  Checker c("core");
  for (std::uint64_t n = 0; n < (1U << 16); ++n) {
    auto [a, b] = stern_pair(Nat(n));
    c.expect(mp::gcd(a, b) == 1, at("gcd(s(n), s(n+1)) = 1", n));
  }
  for (unsigned r = 0; r <= 12; ++r) {
    for (std::uint64_t k = 0; k <= (1U << r); ++k) {
      c.expect(stern(Nat((1U << r) + k)) == stern(Nat((2U << r) - k)), at("mirror symmetry", r, k));
    }
  }
  for (unsigned r = 0; r <= 8; ++r) {
    for (std::uint64_t n = 0; n < 128; ++n) {
      for (std::uint64_t k = 0; k <= (1U << r); ++k) {
        c.expect(stern_block(r, Nat(n), Nat(k)) == stern(Nat((n << r) + k)),
                 at("block identity", r, n));
      }
    }
  }
  for (std::uint64_t n = 1; n < (1U << 14); ++n) {
    const PosRational t = stern_ratio(Nat(n));
    const PosRational one(1);
    c.expect(stern_ratio(Nat(2 * n)) == (one / (one + t.reciprocal())), at("t(2n) recurrence", n));
    c.expect(stern_ratio(Nat(2 * n + 1)) == one + t, at("t(2n+1) recurrence", n));
  }
  for (unsigned r = 0; r <= 12; ++r) {
    const std::uint64_t w = 1U << r;
    for (std::uint64_t k = 0; k < w; ++k) {
      c.expect(stern_ratio(Nat(w + k)) * stern_ratio(Nat(2 * w - k - 1)) == PosRational(1),
               at("reciprocal identity", r, k));
    }
    for (std::uint64_t l2 = 0; r >= 1 && l2 + 2 <= w; l2 += 2) {
      c.expect(stern_ratio(Nat(w + l2)) + stern_ratio(Nat(2 * w - l2 - 2)) == PosRational(1),
               at("complement identity", r, l2));
    }
  }
  const auto s = stern_table((1U << 13) + 2);
  for (unsigned r = 0; r <= 12; ++r) {
    const std::uint64_t w = 1U << r;
    for (std::uint64_t k = 0; k + 2 <= w; ++k) {
      const auto lhs = static_cast<std::int64_t>(s[k + 1] * s[w - k]);
      const auto rhs = static_cast<std::int64_t>(s[k] * s[w - k - 1]);
      c.expect(lhs - rhs == 1, at("determinant relation", r, k));
    }
  }
  for (unsigned r = 0; r <= 6; ++r) {
    for (unsigned r0 = 0; r0 <= 6; ++r0) {
      for (std::uint64_t k0 = 0; k0 < (1U << r0); ++k0) {
        for (std::uint64_t k = 0; k <= (1U << r); ++k) {
          for (std::uint64_t a = 0; a <= 5; ++a) {
            for (std::uint64_t b = 0; b <= 5; ++b) {
              const auto lhs = diatomic(s, r + r0, (k0 << r) + k, a, b);
              const auto rhs = diatomic(s, r, k, diatomic(s, r0, k0, a, b),
                                        diatomic(s, r0, k0 + 1, a, b));
              if (lhs != rhs) c.expect(false, at("self-similarity", r, r0));
            }
          }
        }
      }
      c.expect(true, "self-similarity");
    }
  }
  for (unsigned r = 0; r <= 12; ++r) {
    const auto row = diatomic_row(r, Nat(0), Nat(1));
    bool ok = true;
    for (std::uint64_t k = 0; k < row.size(); ++k) ok = ok && row[k] == s[k];
    c.expect(ok, at("diatomic row (0,1) equals s(k)", r));
  }
  return c.take();
}

SuiteResult enumeration_suite() {
  Checker c("enumeration");
  for (std::uint64_t n = 1; n < (1U << 16); ++n) {
    c.expect(index_of_rational(rational_of_index(Nat(n))) == n, at("index round trip", n));
  }
  for (std::uint64_t p = 1; p <= 40; ++p) {
    for (std::uint64_t q = 1; q <= 40; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const PosRational x{Nat(p), Nat(q)};
      c.expect(rational_of_index(index_of_rational(x)) == x, at("rational round trip", p, q));
    }
  }
  for (std::uint64_t n = 1; n < (1U << 14); ++n) {
    PosRational t = stern_ratio(Nat(n));
    if (t.num() < t.den()) t = t.reciprocal();
    const unsigned r = bit_length(Nat(n)) - 1;
    c.expect(to_odd_cfrac(t).quotient_sum() == r + 1, at("quotient sum", n));
  }
  for (unsigned r = 1; r <= 12; ++r) {
    const std::uint64_t w = 1U << r;
    for (std::uint64_t k = 1; k < w; k += 2) {
      const PosRational lhs{stern(Nat(w + k)), stern(Nat(w - k))};
      const Nat m = reverse_bits(Nat(w + k)).value;
      c.expect(lhs == stern_ratio(m), at("bit reversal", r, k));
    }
  }
  for (unsigned r = 0; r <= 10; ++r) {
    const auto row = brocot_row(r);
    for (std::size_t k = 0; k + 2 < row.size(); ++k) {
      const auto& a = std::get<PosRational>(row[k]);
      const auto& b = std::get<PosRational>(row[k + 1]);
      c.expect(a < b && b.num() * a.den() - a.num() * b.den() == 1, at("Stern-Brocot row", r, k));
    }
  }
  for (unsigned r = 0; r <= 10; ++r) {
    for (std::uint64_t l = 1; l <= (1U << r); l += 2) {
      const PosRational x{stern(Nat(l)), stern(Nat((2U << r) - l))};
      c.expect(minkowski_q(x).value() == PosRational(Nat(l), pow2(r)), at("?-function", r, l));
    }
  }
  std::vector<PosRational> sample;
  for (std::uint64_t q = 1; q <= 40 && sample.size() < 200; ++q) {
    for (std::uint64_t p = 0; p <= q && sample.size() < 200; ++p) {
      if (std::gcd(p, q) == 1) sample.emplace_back(Nat(p), Nat(q));
    }
  }
  std::sort(sample.begin(), sample.end());
  for (std::size_t k = 0; k + 1 < sample.size(); ++k) {
    c.expect(minkowski_q(sample[k]).value() < minkowski_q(sample[k + 1]).value(),
             "?-function is strictly increasing at " + sample[k].str());
  }
  return c.take();
}

SuiteResult modular_suite() {
  Checker c("modular");
  for (Modulus d = 2; d <= 12; ++d) {
    for (std::uint64_t n = 0; n < (1U << 12); ++n) {
      const ResiduePair p = s_mod_pair(n, d);
      c.expect(s_mod_pair(2 * n, d) == PairGraph::apply_left(p) &&
                   s_mod_pair(2 * n + 1, d) == PairGraph::apply_right(p),
               at("doubling maps", d, n));
    }
  }
  for (Modulus d = 2; d <= 5; ++d) {
    const PairGraph g(d);
    const IntMatrix m = adjacency<Int>(g);
    IntMatrix power = IntMatrix::Identity(m.rows(), m.cols());
    for (unsigned r = 0; r <= 10; ++r) {
      for (std::uint64_t mult = 0; mult < 64; ++mult) {
        const auto counts = count_block_all(g, mult << r, (mult + 1) << r);
        const auto alpha = static_cast<Eigen::Index>(g.index_of(s_mod_pair(mult, d)));
        bool ok = true;
        for (Eigen::Index beta = 0; beta < m.cols(); ++beta) {
          ok = ok && counts[beta] == power(alpha, beta);
        }
        c.expect(ok, at("walk counts equal block counts", d, r));
      }
      power = (power * m).eval();
    }
  }
  for (Modulus d = 2; d <= 10; ++d) {
    const PairGraph g(d);
    const auto counts = count_block_all(g, 0, std::uint64_t{1} << (2 * d));
    c.expect(std::all_of(counts.begin(), counts.end(), [](const Nat& x) { return x > 0; }),
             at("every feasible pair is reached", d));
  }
  for (Modulus d = 2; d <= 8; ++d) {
    const IntMatrix m = adjacency<Int>(d);
    IntMatrix power = m;
    bool found = false;
    for (unsigned r = 1; r <= 3 * d && !found; ++r) {
      found = (power.array() > 0).all();
      power = (power * m).eval();
    }
    c.expect(found, at("some power of M_d is positive", d));
  }
  for (Modulus d = 2; d <= 30; ++d) {
    for (const auto& p : feasible_pairs(d)) {
      ResiduePair l = p;
      ResiduePair rr = p;
      for (Modulus k = 0; k < d; ++k) {
        l = PairGraph::apply_left(l);
        rr = PairGraph::apply_right(rr);
      }
      c.expect(l == p && rr == p, at("L^d = R^d = id", d, p.i * d + p.j));
    }
  }
  for (Modulus d = 2; d <= 64; ++d) {
    for (const auto& p : feasible_pairs(d)) {
      c.expect(PairGraph::apply_left(p) != PairGraph::apply_right(p), at("L != R", d));
    }
  }
  for (Modulus d = 2; d <= 60; ++d) {
    const auto pairs = feasible_pairs(d);
    const auto counts = pair_counts(d);
    std::vector<std::uint64_t> rows(d, 0);
    for (const auto& p : pairs) ++rows[p.i];
    c.expect(counts.total == pairs.size() && counts.per_row == rows, at("pair counts", d));
  }
  for (Modulus d = 2; d <= 12; ++d) {
    PosRational total;
    for (Modulus i = 0; i < d; ++i) total = total + density(d, i);
    c.expect(total == PosRational(1), at("densities sum to 1", d));
    c.expect(index_I(d) == density(d, 0).reciprocal().num(), at("I(d) = 1/r_{d,0}", d));
    for (std::uint64_t N : {1ULL, 17ULL, 1000ULL, 16384ULL}) {
      const DistTable t = dist_table(Nat(N), d);
      Nat sum = 0;
      for (const auto& x : t.counts) sum += x;
      c.expect(sum == N, at("counts sum to N", d, N));
    }
  }
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t N = std::uniform_int_distribution<std::uint64_t>(0, 1U << 16)(rng);
    const auto d = static_cast<Modulus>(std::uniform_int_distribution<int>(2, 8)(rng));
    const auto i = static_cast<Modulus>(std::uniform_int_distribution<int>(0, static_cast<int>(d) - 1)(rng));
    c.expect(count_T(Nat(N), d, i, CountStrategy::Scan) == count_T(Nat(N), d, i, CountStrategy::Blocks),
             at("scan and block strategies agree", N, d));
  }
  for (Modulus d = 2; d <= 6; ++d) {
    const IntMatrix m = adjacency<Int>(d);
    const IntPolynomial f = minimal_polynomial(m);
    c.expect(f.is_monic() && evaluate(f, m).isZero(), at("f_d(M_d) = 0", d));
    c.expect(f(Int(2)) == 0, at("f_d(2) = 0", d));
  }
  for (Modulus d : {3U, 5U}) {
    auto deviation = [d](unsigned r) {
      const DistTable t = dist_table(pow2(r), d, CountStrategy::Blocks);
      double worst = 0.0;
      for (Modulus i = 0; i < d; ++i) {
        const double freq = t.counts[i].convert_to<double>() / std::ldexp(1.0, static_cast<int>(r));
        worst = std::max(worst, std::abs(freq - t.densities[i].to_double()));
      }
      return worst;
    };
    const double coarse = deviation(10);
    const double fine = deviation(18);
    c.expect(fine < coarse && fine < 0.01, at("frequencies approach densities", d));
  }
  return c.take();
}

SuiteResult small_d_suite() {
  Checker c("small-d");
  const auto s = stern_table((1U << 16) + 2);
  for (std::uint64_t n = 0; n < (1U << 16); ++n) {
    c.expect(a3_member(Nat(n)) == (s[n] % 3 == 0), at("A3 membership", n));
    c.expect(even_stern_index(Nat(n)) == (s[n] % 2 == 0), at("parity of s(n)", n));
  }
  for (unsigned r = 0; r <= 40; ++r) {
    c.expect(a3_row_count(r) == a3_row_count_closed(r), at("a_r closed form", r));
  }
  for (unsigned r = 0; r <= 20; ++r) {
    c.expect(t3_zero_closed(r) == count_T(pow2(r), 3, 0), at("T(2^r;3,0) closed form", r));
  }
  const auto trace = delta3_trace(std::uint64_t{1} << 16);
  for (std::uint64_t N = 0; N <= (1U << 14); ++N) {
    c.expect(trace[2 * N] == trace[4 * N], at("Delta(2N) = Delta(4N)", N));
  }
  for (std::uint64_t m = 0; 2 * m + 1 <= (1U << 16) && m <= (1U << 15); ++m) {
    const auto [even, odd] = delta3_classify(Nat(m));
    c.expect(trace[2 * m] == even && trace[2 * m + 1] == odd, at("Delta case table", m));
  }
  for (std::uint64_t n = 0; n <= (1U << 16); ++n) {
    c.expect(trace[n] >= 0 && trace[n] <= 3, at("Delta in {0,1,2,3}", n));
  }
  const auto freq = delta3_frequencies(std::uint64_t{1} << 20);
  const double expected[4] = {0.125, 0.375, 0.375, 0.125};
  for (int v = 0; v < 4; ++v) {
    const double f = static_cast<double>(freq.counts[v]) / static_cast<double>(freq.total);
    c.expect(std::abs(f - expected[v]) <= 0.01, at("Delta frequency", static_cast<std::uint64_t>(v)));
  }
  for (Modulus d = 2; d <= 8; ++d) {
    for (std::uint64_t n = 0; n <= (1U << 12); ++n) {
      const bool odd = mp::bit_test(hyperbinary(d, Nat(n)), 0);
      c.expect(odd == (n % d == 0 || n % d == 1), at("hyperbinary parity", d, n));
    }
  }
  for (std::uint64_t n = 1; n <= (1U << 12); ++n) {
    c.expect(hyperbinary(2, Nat(n)) == 1, at("b(2;n) = 1", n));
    c.expect(hyperbinary(3, Nat(n - 1)) == s[n], at("s(n) = b(3;n-1)", n));
  }
  const auto range = residue_difference_range(5, 1, 4, std::uint64_t{1} << 19);
  c.expect(range.min >= -5 && range.max <= 11, "T(N;5,1) - T(N;5,4) within [-5, 11]");
  return c.take();
}

SuiteResult partial_sums_suite() {
  Checker c("partial-sums");
  for (unsigned r = 0; r <= 12; ++r) {
    c.expect(row_sum(r) == exact_range_sum(1U << r, 2U << r), at("A(r) closed form", r));
    c.expect(prefix_row_sum(r) == exact_range_sum(0, 1U << r), at("prefix A(r) closed form", r));
  }
  for (unsigned r = 0; r <= 8; ++r) {
    const Rational lower = prefix_row_sum(r).to_rational();
    const Rational upper = row_sum(r).to_rational();
    for (std::uint64_t m = 0; m <= 200; m += 2) {
      const Rational block = exact_range_sum(m << r, (m + 1) << r).to_rational();
      c.expect(lower <= block && block < upper, at("block bounds", r, m));
    }
  }
  std::mt19937_64 rng(1858);
  std::vector<std::uint64_t> Ns;
  for (int k = 0; k < 500; ++k) Ns.push_back(std::uniform_int_distribution<std::uint64_t>(1, 1U << 16)(rng));
  const auto sums = exact_prefix_sums(Ns);
  for (std::size_t k = 0; k < Ns.size(); ++k) {
    const SumBounds b = average_bounds(Nat(Ns[k]));
    const Rational v = sums[k].to_rational();
    c.expect(b.lower <= v && v < b.upper, at("average bounds", Ns[k]));
  }
  std::vector<std::uint64_t> powers;
  for (unsigned r = 0; r <= 18; ++r) powers.push_back(std::uint64_t{1} << r);
  const auto power_sums = exact_prefix_sums(powers);
  for (unsigned r = 0; r <= 18; ++r) {
    c.expect(power_sums[r] == prefix_row_sum(r), at("prefix sum at 2^r", r));
  }
  c.expect(std::abs(alpha_estimate(1, pow2(20)) - 1.5) <= 0.001, "alpha_1 near 3/2");
  return c.take();
}

struct Suite {
  std::string name;
  std::function<SuiteResult()> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> table = {
      {"core", core_suite},
      {"enumeration", enumeration_suite},
      {"modular", modular_suite},
      {"small-d", small_d_suite},
      {"partial-sums", partial_sums_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.name);
    out.push_back("all");
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_suite(const std::string& name) {
  std::vector<SuiteResult> results;
  for (const auto& s : suites()) {
    if (name == "all" || name == s.name) results.push_back(s.run());
  }
  if (results.empty()) throw DomainError("unknown suite '" + name + "'");
  return results;
}

}  // namespace stern
