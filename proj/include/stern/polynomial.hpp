#pragma once

// Dense polynomials templated on the coefficient ring, the exact minimal
// polynomial of an integer matrix, and numeric root reports.

#include "stern/arith.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include <complex>
#include <string>
#include <vector>

namespace stern {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix = Matrix<Int>;

/// Coefficients in ascending degree; trailing zeros are trimmed, so the zero
/// polynomial has no coefficients and degree -1.
template <class Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Polynomial monomial(int degree, Scalar c = Scalar(1)) {
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(int i) const {
    return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : Scalar(0);
  }
  const Scalar& leading() const { return coeffs_.back(); }

  /// Horner evaluation at any type T supporting T * Scalar and T + Scalar.
  template <class T>
  T operator()(const T& x) const {
    T acc = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

using IntPolynomial = Polynomial<Int>;
using RatPolynomial = Polynomial<Rational>;

RatPolynomial to_rational(const IntPolynomial& p);
RatPolynomial derivative(const RatPolynomial& p);
RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);

struct DivMod {
  RatPolynomial quotient;
  RatPolynomial remainder;
};
/// Euclidean division over the rationals; throws DomainError for b = 0.
DivMod divmod(const RatPolynomial& a, const RatPolynomial& b);
/// Monic greatest common divisor (zero if both inputs are zero).
RatPolynomial gcd(RatPolynomial a, RatPolynomial b);

struct SquareFreeFactor {
  RatPolynomial factor;  // monic, square free, pairwise coprime
  int multiplicity = 1;
};
/// Yun's decomposition p = lc * prod factor^multiplicity.
std::vector<SquareFreeFactor> square_free_decomposition(const RatPolynomial& p);

/// "T^5 - 2*T^4 + T^3 - 4*T^2 + 4*T".
std::string to_string(const IntPolynomial& p);

/// f(M) by Horner's scheme on exact matrices.
template <class Scalar>
Matrix<Scalar> evaluate(const Polynomial<Scalar>& f, const Matrix<Scalar>& m) {
  Matrix<Scalar> acc = Matrix<Scalar>::Zero(m.rows(), m.cols());
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(m.rows(), m.cols());
  for (auto it = f.coefficients().rbegin(); it != f.coefficients().rend(); ++it) {
    acc = (acc * m).eval();
    acc += *it * id;
  }
  return acc;
}

/// Least-degree monic annihilating polynomial of a square integer matrix:
/// the first k for which vec(I), vec(M), ..., vec(M^k) are linearly
/// dependent, found by fraction-free Gaussian elimination.
IntPolynomial minimal_polynomial(const IntMatrix& m);

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
  /// |g(z)| for the square-free factor g that produced the root.
  double residual = 0.0;
};

/// Roots of p with multiplicities, each refined by Newton's method on its
/// square-free factor. Sorted by real part, then imaginary part.
/// Throws NumericalError if a root fails to converge.
std::vector<Root> roots(const RatPolynomial& p, int max_iterations = 100);

}  // namespace stern
