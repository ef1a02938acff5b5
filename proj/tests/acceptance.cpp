// Acceptance run: one PASS/FAIL line per criterion, each against its own
// runtime limit. Exit status is nonzero if any criterion fails.

#include "oracle.hpp"
#include "stern/cli.hpp"
#include "stern/enumeration.hpp"
#include "stern/modular.hpp"
#include "stern/partial_sums.hpp"
#include "stern/sequence.hpp"
#include "stern/small_d.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

using namespace stern;

namespace {

// Records the first failed expectation.
class Check {
 public:
  bool operator()(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
    return ok;
  }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

std::string at(const char* what, std::uint64_t a, std::uint64_t b = 0) {
  return std::string(what) + " (" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

const std::vector<std::uint64_t>& table() {
  static const auto s = oracle::stern_values((1U << 20) + 2);
  return s;
}

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return code == 0 ? out.str() : "exit " + std::to_string(code) + ": " + err.str();
}

void golden_rows(Check& c) {
  const std::string row = cli_out({"row", "3", "0", "1"});
  c(row == "0\t1\t1\t2\t1\t3\t2\t3\t1\n", "row 3 0 1 printed " + row);
  const std::string ratios = cli_out({"ratio", "--row", "3"});
  c(ratios == "1/4\t4/3\t3/5\t5/2\t2/5\t5/3\t3/4\t4/1\n", "ratio row 3 printed " + ratios);
}

void coprimality_and_mirror(Check& c) {
  for (std::uint64_t n = 0; n < (1U << 16); ++n) {
    const SternPair p = stern_pair(Nat(n));
    if (!c(mp::gcd(p.left, p.right) == 1, at("gcd(s(n), s(n+1)) != 1 at n", n))) return;
  }
  for (unsigned r = 0; r <= 12; ++r) {
    for (std::uint64_t k = 0; k <= (1U << r); ++k) {
      if (!c(stern::stern(Nat((1U << r) + k)) == stern::stern(Nat((2U << r) - k)), at("mirror fails at (r, k)", r, k))) return;
    }
  }
}

void enumeration_bijection(Check& c) {
  for (std::uint64_t n = 1; n <= (1U << 16); ++n) {
    const PosRational x = rational_of_index(Nat(n));
    if (!c(index_of_rational(x) == n, at("round trip fails at n", n))) return;
    const PosRational y = x.num() < x.den() ? x.reciprocal() : x;
    const unsigned r = bit_length(Nat(n)) - 1;
    if (!c(to_odd_cfrac(y).quotient_sum() == r + 1, at("quotient sum fails at n", n))) return;
  }
  for (std::uint64_t p = 1; p <= 40; ++p) {
    for (std::uint64_t q = 1; q <= 40; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const PosRational x{Nat(p), Nat(q)};
      const Nat n = index_of_rational(x);
      if (!c(rational_of_index(n) == x, at("p/q round trip fails at", p, q))) return;
      if (!c(n == oracle::calkin_wilf_index(p, q), at("index disagrees with the tree walk at", p, q))) return;
    }
  }
}

void walk_count_oracle(Check& c) {
  for (Modulus d : {2U, 3U, 4U, 5U}) {
    const PairGraph g(d);
    const IntMatrix m = adjacency<Int>(g);
    for (unsigned r = 0; r <= 10; ++r) {
      const IntMatrix power = matrix_power(m, r);
      for (std::uint64_t mult = 0; mult < 64; ++mult) {
        std::vector<std::uint64_t> brute(g.order(), 0);
        for (std::uint64_t n = mult << r; n < (mult + 1) << r; ++n) {
          ++brute[g.index_of({static_cast<Modulus>(table()[n] % d), static_cast<Modulus>(table()[n + 1] % d), d})];
        }
        const ResiduePair start{static_cast<Modulus>(table()[mult] % d),
                                static_cast<Modulus>(table()[mult + 1] % d), d};
        const auto alpha = static_cast<Eigen::Index>(g.index_of(start));
        for (std::size_t beta = 0; beta < g.order(); ++beta) {
          if (!c(power(alpha, static_cast<Eigen::Index>(beta)) == brute[beta],
                 "walk count mismatch for d=" + std::to_string(d) + " r=" + std::to_string(r) +
                     " m=" + std::to_string(mult))) {
            return;
          }
        }
      }
    }
  }
}

void exact_structures(Check& c) {
  const int expected[8][8] = {
      {1, 0, 0, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 1}, {0, 0, 1, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 1},
      {1, 0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0, 1, 0},
  };
  const IntMatrix m = adjacency<Int>(3);
  if (!c(m.rows() == 8 && m.cols() == 8, "adjacency(3) is not 8x8")) return;
  for (Eigen::Index a = 0; a < 8; ++a) {
    for (Eigen::Index b = 0; b < 8; ++b) c(m(a, b) == expected[a][b], at("adjacency(3) differs at", a, b));
  }
  const IntPolynomial f = minimal_polynomial(3);
  c(f.coefficients() == std::vector<Int>{0, 4, -4, 1, -2, 1}, "minimal_polynomial(3) = " + to_string(f));
  const SpectralReport s = spectral(3);
  c(std::abs(s.rho - std::sqrt(2.0)) <= 1e-9, "rho_3 = " + std::to_string(s.rho));
  c(std::abs(s.tau - 0.5) <= 1e-9, "tau_3 = " + std::to_string(s.tau));
}

void distribution_convergence(Check& c) {
  for (Modulus d : {3U, 5U}) {
    auto deviation = [d](unsigned r) {
      double worst = 0.0;
      for (Modulus i = 0; i < d; ++i) {
        const Nat t = count_T(pow2(r), d, i, CountStrategy::Blocks);
        const double freq = t.convert_to<double>() / std::ldexp(1.0, static_cast<int>(r));
        worst = std::max(worst, std::abs(freq - density(d, i).to_double()));
      }
      return worst;
    };
    const double coarse = deviation(10);
    const double fine = deviation(18);
    const std::string msg = "d=" + std::to_string(d) + ": deviation " + std::to_string(coarse) +
                            " at r=10, " + std::to_string(fine) + " at r=18";
    c(fine < coarse && fine < 0.01, msg);
  }
}

void d3_closed_forms(Check& c) {
  for (unsigned r = 0; r <= 20; ++r) {
    c(t3_zero_closed(r) == oracle::count_residue(table(), std::uint64_t{1} << r, 3, 0),
      at("T(2^r;3,0) closed form fails at r", r));
  }
  for (unsigned r = 0; r <= 40; ++r) {
    c(a3_row_count(r) == a3_row_count_closed(r), at("a_r recurrence vs closed form at r", r));
  }
  for (unsigned r = 0; r <= 16; ++r) {
    std::uint64_t brute = 0;
    for (std::uint64_t n = std::uint64_t{1} << r; n < (std::uint64_t{2} << r); ++n) brute += (table()[n] % 3 == 0);
    c(a3_row_count(r) == brute, at("a_r vs scan at r", r));
  }
}

void delta_boundedness(Check& c) {
  // Delta(0..2^20) straight from the residue table.
  const std::uint64_t limit = std::uint64_t{1} << 20;
  std::vector<int> delta(limit + 1, 0);
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto res = table()[n] % 3;
    delta[n + 1] = delta[n] + (res == 1) - (res == 2);
  }
  for (std::uint64_t n = 0; n <= (1U << 16); ++n) {
    if (!c(delta[n] >= 0 && delta[n] <= 3, at("Delta outside {0,1,2,3} at n", n))) return;
  }
  for (std::uint64_t m = 0; m <= (1U << 15); ++m) {
    const auto [even, odd] = delta3_classify(Nat(m));
    if (!c(even == delta[2 * m] && odd == delta[2 * m + 1], at("case table fails at m", m))) return;
  }
  for (std::uint64_t N = 0; N <= (1U << 14); ++N) {
    if (!c(delta[2 * N] == delta[4 * N], at("Delta(2N) != Delta(4N) at N", N))) return;
  }
  std::uint64_t counts[4] = {0, 0, 0, 0};
  for (std::uint64_t n = 0; n < limit; ++n) {
    if (!c(delta[n] >= 0 && delta[n] <= 3, at("Delta outside {0,1,2,3} at n", n))) return;
    ++counts[delta[n]];
  }
  const double target[4] = {0.125, 0.375, 0.375, 0.125};
  for (int v = 0; v < 4; ++v) {
    const double f = static_cast<double>(counts[v]) / static_cast<double>(limit);
    c(std::abs(f - target[v]) <= 0.01, "frequency of Delta = " + std::to_string(v) + " is " + std::to_string(f));
  }
}

void cross_modulus(Check& c) {
  auto zeros = [](Modulus d, unsigned r) { return count_T(pow2(r), d, 0, CountStrategy::Blocks); };
  bool differs = false;
  for (unsigned r = 0; r <= 19; ++r) {
    c(zeros(4, r) == zeros(5, r), at("T(2^r;4,0) != T(2^r;5,0) at r", r));
    const Nat six = zeros(6, r);
    c(six == zeros(9, r) && six == zeros(11, r), at("T(2^r;6,0), T(2^r;9,0), T(2^r;11,0) differ at r", r));
    c(zeros(22, r) == zeros(27, r), at("T(2^r;22,0) != T(2^r;27,0) at r", r));
    differs = differs || zeros(8, r) != six;
  }
  c(differs, "T(2^r;8,0) = T(2^r;6,0) for every r <= 19");
}

void average_value(Check& c) {
  std::mt19937_64 rng(0x5EED);
  std::vector<std::uint64_t> Ns;
  for (int k = 0; k < 500; ++k) Ns.push_back(std::uniform_int_distribution<std::uint64_t>(1, 1U << 16)(rng));
  const auto sums = exact_prefix_sums(Ns);
  for (std::size_t k = 0; k < Ns.size(); ++k) {
    const SumBounds b = average_bounds(Nat(Ns[k]));
    const Rational v = sums[k].to_rational();
    c(b.lower <= v && v < b.upper, at("average bounds fail at N", Ns[k]));
  }
  for (unsigned r = 0; r <= 12; ++r) {
    oracle::BigRat row = 0;
    oracle::BigRat prefix = 0;
    for (std::uint64_t n = 0; n < (2U << r); ++n) {
      const oracle::BigRat t(table()[n], table()[n + 1]);
      (n < (1U << r) ? prefix : row) += t;
    }
    c(row_sum(r).to_rational() == row, at("A(r) closed form fails at r", r));
    c(prefix_row_sum(r).to_rational() == prefix, at("prefix row sum fails at r", r));
  }
  const Nat N = pow2(20);
  const double alpha1 = alpha_estimate(1, N);
  c(alpha1 >= 1.499 && alpha1 <= 1.501, "alpha_1 = " + std::to_string(alpha1));
  const double targets[] = {1.262, 1.643, 1.161};
  for (unsigned t = 2; t <= 4; ++t) {
    const double a = alpha_estimate(t, N);
    c(std::abs(a - targets[t - 2]) <= 0.02, "alpha_" + std::to_string(t) + " = " + std::to_string(a));
  }
}

void hyperbinary_identities(Check& c) {
  for (std::uint64_t n = 1; n <= (1U << 12); ++n) {
    c(hyperbinary(2, Nat(n)) == 1, at("b(2;n) != 1 at n", n));
    c(hyperbinary(3, Nat(n - 1)) == table()[n], at("s(n) != b(3;n-1) at n", n));
  }
  for (Modulus d = 2; d <= 8; ++d) {
    for (std::uint64_t n = 0; n <= (1U << 12); ++n) {
      const bool odd = mp::bit_test(hyperbinary(d, Nat(n)), 0);
      c(odd == (n % d <= 1), at("parity law fails at (d, n)", d, n));
    }
  }
  const std::size_t deg = 1024;
  std::vector<Nat> poly(deg + 1, 0);
  poly[1] = 1;
  for (std::size_t w = 1; w <= deg; w *= 2) {
    std::vector<Nat> next(deg + 1, 0);
    for (std::size_t k = 0; k <= deg; ++k) {
      if (poly[k] == 0) continue;
      next[k] += poly[k];
      if (k + w <= deg) next[k + w] += poly[k];
      if (k + 2 * w <= deg) next[k + 2 * w] += poly[k];
    }
    poly = std::move(next);
  }
  for (std::size_t n = 0; n <= deg; ++n) c(poly[n] == table()[n], at("product coefficient differs at", n));
}

std::string d5_observed;

void d5_range(Check& c) {
  const DifferenceRange r = residue_difference_range(5, 1, 4, std::uint64_t{1} << 19);
  d5_observed = "observed [" + r.min.str() + ", " + r.max.str() + "]";
  c(r.min >= -5 && r.max <= 11, "T(N;5,1) - T(N;5,4) " + d5_observed);
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "golden rows", 1, golden_rows},
      {2, "coprimality and mirror symmetry", 10, coprimality_and_mirror},
      {3, "enumeration bijection and quotient sums", 30, enumeration_bijection},
      {4, "walk counts equal block counts", 60, walk_count_oracle},
      {5, "exact mod-3 structures", 5, exact_structures},
      {6, "distribution convergence", 60, distribution_convergence},
      {7, "d=3 closed forms", 60, d3_closed_forms},
      {8, "Delta boundedness and frequencies", 60, delta_boundedness},
      {9, "cross-modulus equalities", 30, cross_modulus},
      {10, "average value bounds and shifted averages", 120, average_value},
      {11, "hyperbinary identities", 30, hyperbinary_identities},
      {12, "d=5 difference range", 120, d5_range},
  };
  table();  // shared oracle table, built outside the timed sections
  int failures = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    crit.body(check);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string reason = check.failure();
    if (reason.empty() && seconds > crit.limit_seconds) reason = "exceeded the runtime limit";
    const bool ok = reason.empty();
    failures += !ok;
    std::printf("%s [%d] %s (%.3f s, limit %.0f s)", ok ? "PASS" : "FAIL", crit.id, crit.name, seconds,
                crit.limit_seconds);
    if (crit.id == 12) std::printf(" %s", d5_observed.c_str());
    if (!ok) std::printf(": %s", reason.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
