#include "stern/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace stern {

namespace {

constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

std::vector<Modulus> prime_divisors(Modulus d) {
  std::vector<Modulus> primes;
  for (Modulus p = 2; static_cast<std::uint64_t>(p) * p <= d; ++p) {
    if (d % p != 0) continue;
    primes.push_back(p);
    while (d % p == 0) d /= p;
  }
  if (d > 1) primes.push_back(d);
  return primes;
}

}  // namespace

void require_modulus(Modulus d) {
  if (d < 2) throw DomainError("modulus d must be at least 2");
}

bool is_feasible(Modulus i, Modulus j, Modulus d) { return std::gcd(std::gcd(i, j), d) == 1; }

std::vector<ResiduePair> feasible_pairs(Modulus d) {
  require_modulus(d);
  std::vector<ResiduePair> pairs;
  for (Modulus i = 0; i < d; ++i) {
    for (Modulus j = 0; j < d; ++j) {
      if (is_feasible(i, j, d)) pairs.push_back({i, j, d});
    }
  }
  return pairs;
}

PairCounts pair_counts(Modulus d) {
  require_modulus(d);
  const auto primes = prime_divisors(d);
  PairCounts out;
  // N_d = d^2 prod (p^2 - 1)/p^2; each p^2 divides d^2.
  std::uint64_t total = static_cast<std::uint64_t>(d) * d;
  for (auto p : primes) total = total / (static_cast<std::uint64_t>(p) * p) * (p * p - 1ULL);
  out.total = total;
  out.per_row.resize(d);
  for (Modulus i = 0; i < d; ++i) {
    std::uint64_t row = d;
    for (auto p : primes) {
      if (i % p == 0) row = row / p * (p - 1);
    }
    out.per_row[i] = row;
  }
  return out;
}

ResiduePair s_mod_pair(std::uint64_t n, Modulus d) {
  require_modulus(d);
  if (n == 0) return {0, 1 % d, d};
  std::uint64_t a = 1 % d;
  std::uint64_t b = 1 % d;
  for (int i = 62 - __builtin_clzll(n); i >= 0; --i) {
    if ((n >> i) & 1U) {
      a = (a + b) % d;
    } else {
      b = (a + b) % d;
    }
  }
  return {static_cast<Modulus>(a), static_cast<Modulus>(b), d};
}

ResiduePair s_mod_pair(const Nat& n, Modulus d) {
  require_nat(n, "n");
  require_modulus(d);
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    return s_mod_pair(n.convert_to<std::uint64_t>(), d);
  }
  std::uint64_t a = 1 % d;
  std::uint64_t b = 1 % d;
  for (unsigned i = bit_length(n) - 1; i-- > 0;) {
    if (mp::bit_test(n, i)) {
      a = (a + b) % d;
    } else {
      b = (a + b) % d;
    }
  }
  return {static_cast<Modulus>(a), static_cast<Modulus>(b), d};
}

PairGraph::PairGraph(Modulus d, std::size_t max_order) : d_(d) {
  require_modulus(d);
  const PairCounts counts = pair_counts(d);
  if (counts.total > max_order) {
    throw ResourceError("G_" + std::to_string(d) + " has " + std::to_string(counts.total) +
                        " vertices, above the matrix cap of " + std::to_string(max_order));
  }
  vertices_ = feasible_pairs(d);
  index_.assign(static_cast<std::size_t>(d) * d, kNoVertex);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    index_[static_cast<std::size_t>(vertices_[v].i) * d + vertices_[v].j] = v;
  }
  left_.resize(vertices_.size());
  right_.resize(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    left_[v] = index_of(apply_left(vertices_[v]));
    right_[v] = index_of(apply_right(vertices_[v]));
  }
}

std::size_t PairGraph::index_of(const ResiduePair& p) const {
  if (p.d != d_ || p.i >= d_ || p.j >= d_) throw DomainError("pair does not belong to this modulus");
  const std::size_t v = index_[static_cast<std::size_t>(p.i) * d_ + p.j];
  if (v == kNoVertex) throw DomainError("pair is not feasible: gcd(i, j, d) != 1");
  return v;
}

PairGraph graph(Modulus d, std::size_t max_order) { return PairGraph(d, max_order); }

std::vector<Nat> walk_row(const PairGraph& g, std::size_t start, unsigned r) {
  std::vector<Nat> row(g.order(), Nat(0));
  row.at(start) = 1;
  std::vector<Nat> next(g.order());
  for (unsigned step = 0; step < r; ++step) {
    std::fill(next.begin(), next.end(), Nat(0));
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (row[v] == 0) continue;
      next[g.left(v)] += row[v];
      next[g.right(v)] += row[v];
    }
    row.swap(next);
  }
  return row;
}

namespace {

void scan_range(const PairGraph& g, std::uint64_t begin, std::uint64_t end,
                std::vector<std::uint64_t>& counts) {
  if (begin >= end) return;
  const Modulus d = g.modulus();
  SternStream stream(begin);
  for (std::uint64_t n = begin; n < end; ++n) {
    const auto i = static_cast<std::size_t>(stream.current() % d);
    const auto j = static_cast<std::size_t>(stream.next_value() % d);
    ++counts[g.index_of({static_cast<Modulus>(i), static_cast<Modulus>(j), d})];
    stream.advance();
  }
}

}  // namespace

std::vector<Nat> count_block_all(const PairGraph& g, std::uint64_t U1, std::uint64_t U2,
                                 unsigned threads) {
  std::vector<Nat> out(g.order(), Nat(0));
  if (U1 >= U2) return out;
  threads = std::max(1U, threads);
  const std::uint64_t span = U2 - U1;
  if (threads == 1 || span < 4096) {
    std::vector<std::uint64_t> counts(g.order(), 0);
    scan_range(g, U1, U2, counts);
    for (std::size_t v = 0; v < g.order(); ++v) out[v] = counts[v];
    return out;
  }
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(g.order(), 0));
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (span + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = U1 + std::min(span, chunk * t);
    const std::uint64_t e = U1 + std::min(span, chunk * (t + 1));
    workers.emplace_back([&g, b, e, &slot = partial[t]] { scan_range(g, b, e, slot); });
  }
  for (auto& w : workers) w.join();
  for (const auto& counts : partial) {
    for (std::size_t v = 0; v < g.order(); ++v) out[v] += counts[v];
  }
  return out;
}

Nat count_block(Modulus d, const ResiduePair& gamma, const Nat& U1, const Nat& U2,
                unsigned threads) {
  require_modulus(d);
  if (U1 >= U2) throw DomainError("count_block needs U1 < U2");
  const PairGraph g(d, std::numeric_limits<std::size_t>::max());
  const std::size_t target = g.index_of(gamma);
  return count_block_all(g, to_u64(U1, "U1"), to_u64(U2, "U2"), threads)[target];
}

std::vector<Nat> pair_distribution(const PairGraph& g, const Nat& N, CountStrategy strategy,
                                   unsigned threads) {
  require_nat(N, "N");
  if (strategy == CountStrategy::Auto) {
    strategy = (N <= 65536) ? CountStrategy::Scan : CountStrategy::Blocks;
  }
  if (strategy == CountStrategy::Scan) {
    if (N > kDefaultScanLimit) {
      throw ResourceError("direct scan is limited to N <= " + std::to_string(kDefaultScanLimit) +
                          "; use the block strategy");
    }
    return count_block_all(g, 0, N.convert_to<std::uint64_t>(), threads);
  }
  std::vector<Nat> totals(g.order(), Nat(0));
  if (N == 0) return totals;
  for (const Block& block : block_decompose(N)) {
    const std::size_t start = g.index_of(s_mod_pair(block.multiplier, g.modulus()));
    const auto row = walk_row(g, start, block.exponent);
    for (std::size_t v = 0; v < g.order(); ++v) totals[v] += row[v];
  }
  return totals;
}

Nat count_T(const Nat& N, Modulus d, Modulus i, CountStrategy strategy, unsigned threads) {
  require_modulus(d);
  if (i >= d) throw DomainError("residue i must satisfy 0 <= i < d");
  const PairGraph g(d, std::numeric_limits<std::size_t>::max());
  const auto per_pair = pair_distribution(g, N, strategy, threads);
  Nat total = 0;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (g.vertex(v).i == i) total += per_pair[v];
  }
  return total;
}

PosRational density(Modulus d, Modulus i) {
  require_modulus(d);
  if (i >= d) throw DomainError("residue i must satisfy 0 <= i < d");
  PosRational r(Nat(1), Nat(d));
  for (auto p : prime_divisors(d)) {
    const Nat P = p;
    if (i % p == 0) {
      r = r * PosRational(P, P + 1);
    } else {
      r = r * PosRational(P * P, P * P - 1);
    }
  }
  return r;
}

Nat index_I(Modulus d) {
  require_modulus(d);
  Nat value = d;
  for (auto p : prime_divisors(d)) value = value / p * (p + 1);
  return value;
}

DistTable dist_table(const Nat& N, Modulus d, CountStrategy strategy, unsigned threads,
                     std::size_t max_order) {
  const PairGraph g(d, max_order);
  DistTable table;
  table.d = d;
  table.N = N;
  table.pair_counts = pair_distribution(g, N, strategy, threads);
  table.counts.assign(d, Nat(0));
  for (std::size_t v = 0; v < g.order(); ++v) table.counts[g.vertex(v).i] += table.pair_counts[v];
  for (Modulus i = 0; i < d; ++i) table.densities.push_back(density(d, i));
  return table;
}

IntPolynomial minimal_polynomial(Modulus d, std::size_t max_order) {
  return minimal_polynomial(adjacency<Int>(d, max_order));
}

SpectralReport spectral_from(Modulus d, const IntPolynomial& f) {
  SpectralReport report;
  report.d = d;
  report.minimal_polynomial = f;
  const RatPolynomial two_factor(std::vector<Rational>{Rational(-2), Rational(1)});
  auto [quotient, remainder] = divmod(to_rational(f), two_factor);
  if (!remainder.is_zero()) throw NumericalError("2 is not a root of the minimal polynomial");
  if (quotient(Rational(2)) == 0) throw NumericalError("2 is a repeated root of the minimal polynomial");

  report.roots = roots(quotient);
  for (const auto& root : report.roots) report.rho = std::max(report.rho, std::abs(root.value));
  int top_multiplicity = 0;
  for (const auto& root : report.roots) {
    if (std::abs(root.value) >= report.rho * (1.0 - 1e-9)) {
      top_multiplicity = std::max(top_multiplicity, root.multiplicity);
    }
  }
  report.sigma = std::max(0, top_multiplicity - 1);
  report.tau = report.rho > 1.0 ? std::log2(report.rho) : 0.0;

  report.roots.push_back({std::complex<double>(2.0, 0.0), 1, 0.0});
  std::sort(report.roots.begin(), report.roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return report;
}

SpectralReport spectral(Modulus d, std::size_t max_order) {
  return spectral_from(d, minimal_polynomial(d, max_order));
}

std::string graph_export(Modulus d, std::size_t max_order) {
  const PairGraph g(d, max_order);
  auto label = [](const ResiduePair& p) {
    return "\"(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")\"";
  };
  std::ostringstream os;
  os << "digraph G_" << d << " {\n";
  for (const auto& v : g.vertices()) os << "  " << label(v) << ";\n";
  for (std::size_t v = 0; v < g.order(); ++v) {
    os << "  " << label(g.vertex(v)) << " -> " << label(g.vertex(g.left(v))) << " [label=\"L\"];\n";
    os << "  " << label(g.vertex(v)) << " -> " << label(g.vertex(g.right(v))) << " [label=\"R\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stern
