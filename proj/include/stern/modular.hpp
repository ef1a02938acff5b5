#pragma once

// Residue pairs S_d(n) = (s(n) mod d, s(n+1) mod d), the walk graph G_d on
// the feasible pairs with L(i,j) = (i, i+j) and R(i,j) = (i+j, j), its
// adjacency matrix M_d and powers, the block and prefix counts, and the
// exact minimal polynomial of M_d with its numeric spectrum.
//
// Vertices are always ordered lexicographically by (i, j).

#include "stern/arith.hpp"
#include "stern/polynomial.hpp"
#include "stern/sequence.hpp"

#include <compare>
#include <cstdint>
#include <tuple>
#include <string>
#include <vector>

namespace stern {

using Modulus = std::uint32_t;

inline constexpr std::size_t kDefaultMatrixOrder = 4096;
/// Prefix counts up to this N may use the direct scan.
inline constexpr std::uint64_t kDefaultScanLimit = std::uint64_t{1} << 26;

struct ResiduePair {
  Modulus i = 0;
  Modulus j = 0;
  Modulus d = 2;

  friend bool operator==(const ResiduePair&, const ResiduePair&) = default;
  friend auto operator<=>(const ResiduePair& a, const ResiduePair& b) {
    return std::tie(a.i, a.j) <=> std::tie(b.i, b.j);
  }
};

/// gcd(i, j, d) = 1 with 0 <= i, j < d.
bool is_feasible(Modulus i, Modulus j, Modulus d);

/// Throws DomainError for d < 2.
void require_modulus(Modulus d);

/// All feasible pairs mod d in lexicographic order.
std::vector<ResiduePair> feasible_pairs(Modulus d);

struct PairCounts {
  std::uint64_t total = 0;             // N_d
  std::vector<std::uint64_t> per_row;  // N_d(i), i = 0..d-1
};
/// N_d and N_d(i) from the prime factorization of d.
PairCounts pair_counts(Modulus d);

/// S_d(n), by the binary pair scan carried out mod d.
ResiduePair s_mod_pair(const Nat& n, Modulus d);
ResiduePair s_mod_pair(std::uint64_t n, Modulus d);

/// G_d with successor tables indexed by vertex position.
class PairGraph {
 public:
  explicit PairGraph(Modulus d, std::size_t max_order = kDefaultMatrixOrder);

  Modulus modulus() const { return d_; }
  std::size_t order() const { return vertices_.size(); }
  const std::vector<ResiduePair>& vertices() const { return vertices_; }
  const ResiduePair& vertex(std::size_t v) const { return vertices_[v]; }
  /// Position of a feasible pair; throws DomainError otherwise.
  std::size_t index_of(const ResiduePair& p) const;

  std::size_t left(std::size_t v) const { return left_[v]; }
  std::size_t right(std::size_t v) const { return right_[v]; }

  static ResiduePair apply_left(const ResiduePair& p) { return {p.i, (p.i + p.j) % p.d, p.d}; }
  static ResiduePair apply_right(const ResiduePair& p) { return {(p.i + p.j) % p.d, p.j, p.d}; }

 private:
  Modulus d_;
  std::vector<ResiduePair> vertices_;
  std::vector<std::size_t> index_;  // i * d + j -> position, or npos
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

PairGraph graph(Modulus d, std::size_t max_order = kDefaultMatrixOrder);

/// 0-1 adjacency matrix with m(a, L(a)) = m(a, R(a)) = 1.
template <class Scalar = Int>
Matrix<Scalar> adjacency(const PairGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    m(v, static_cast<Eigen::Index>(g.left(v))) = Scalar(1);
    m(v, static_cast<Eigen::Index>(g.right(v))) = Scalar(1);
  }
  return m;
}

template <class Scalar = Int>
Matrix<Scalar> adjacency(Modulus d, std::size_t max_order = kDefaultMatrixOrder) {
  return adjacency<Scalar>(PairGraph(d, max_order));
}

/// m^r by repeated squaring.
template <class Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& m, unsigned r) {
  Matrix<Scalar> result = Matrix<Scalar>::Identity(m.rows(), m.cols());
  Matrix<Scalar> base = m;
  while (r > 0) {
    if (r & 1U) result = (result * base).eval();
    r >>= 1;
    if (r > 0) base = (base * base).eval();
  }
  return result;
}

/// M_d^r; entry (a, b) counts walks of length r from a to b.
template <class Scalar = Int>
Matrix<Scalar> walk_counts(Modulus d, unsigned r, std::size_t max_order = kDefaultMatrixOrder) {
  return matrix_power(adjacency<Scalar>(d, max_order), r);
}

/// Row `start` of M_d^r, propagated edge by edge through the graph.
std::vector<Nat> walk_row(const PairGraph& g, std::size_t start, unsigned r);

/// B(gamma; U1, U2): how many m in [U1, U2) have S_d(m) = gamma. Direct scan,
/// optionally split across `threads` workers with an ordered merge.
Nat count_block(Modulus d, const ResiduePair& gamma, const Nat& U1, const Nat& U2,
                unsigned threads = 1);

/// B(alpha; U1, U2) for every vertex at once, by direct scan.
std::vector<Nat> count_block_all(const PairGraph& g, std::uint64_t U1, std::uint64_t U2,
                                 unsigned threads = 1);

enum class CountStrategy { Scan, Blocks, Auto };

/// B(alpha; 0, N) for every vertex alpha.
std::vector<Nat> pair_distribution(const PairGraph& g, const Nat& N, CountStrategy strategy,
                                   unsigned threads = 1);

/// T(N; d, i) = #{0 <= n < N : s(n) = i mod d}.
Nat count_T(const Nat& N, Modulus d, Modulus i, CountStrategy strategy = CountStrategy::Auto,
            unsigned threads = 1);

/// r_{d,i}: limiting frequency of s(n) = i mod d.
PosRational density(Modulus d, Modulus i);

/// I(d) = d * prod_{p | d} (p + 1)/p = 1/r_{d,0}.
Nat index_I(Modulus d);

struct DistTable {
  Modulus d = 2;
  Nat N;
  std::vector<Nat> counts;              // T(N; d, i)
  std::vector<PosRational> densities;   // r_{d,i}
  std::vector<Nat> pair_counts;         // B(alpha; 0, N), lexicographic alpha
};

DistTable dist_table(const Nat& N, Modulus d, CountStrategy strategy = CountStrategy::Auto,
                     unsigned threads = 1, std::size_t max_order = kDefaultMatrixOrder);

/// Minimal polynomial f_d of M_d.
IntPolynomial minimal_polynomial(Modulus d, std::size_t max_order = kDefaultMatrixOrder);

struct SpectralReport {
  Modulus d = 2;
  IntPolynomial minimal_polynomial;
  /// Roots of f_d with multiplicities; the simple root 2 is exact.
  std::vector<Root> roots;
  /// Largest modulus among roots other than 2.
  double rho = 0.0;
  /// sigma_d: (largest multiplicity among roots of modulus rho) - 1.
  int sigma = 0;
  /// max(0, log2 rho).
  double tau = 0.0;
};

SpectralReport spectral(Modulus d, std::size_t max_order = kDefaultMatrixOrder);
/// Same report from an already computed minimal polynomial.
SpectralReport spectral_from(Modulus d, const IntPolynomial& f);

/// DOT digraph of G_d; nodes "(i,j)" and edges labelled L or R, in
/// lexicographic order.
std::string graph_export(Modulus d, std::size_t max_order = kDefaultMatrixOrder);

}  // namespace stern
