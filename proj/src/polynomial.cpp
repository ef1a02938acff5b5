#include "stern/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stern {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

RatPolynomial derivative(const RatPolynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> c;
  for (int i = 1; i <= p.degree(); ++i) c.push_back(p.coefficient(i) * i);
  return RatPolynomial(std::move(c));
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(static_cast<std::size_t>(a.degree() + b.degree() + 1), Rational(0));
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) c[i + j] += a.coefficient(i) * b.coefficient(j);
  }
  return RatPolynomial(std::move(c));
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) {
  const int n = std::max(a.degree(), b.degree());
  std::vector<Rational> c;
  for (int i = 0; i <= n; ++i) c.push_back(a.coefficient(i) - b.coefficient(i));
  return RatPolynomial(std::move(c));
}

DivMod divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    const Rational c = rem[i] / b.leading();
    quot[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b.coefficient(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RatPolynomial(std::move(quot)), RatPolynomial(std::move(rem))};
}

namespace {

RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  std::vector<Rational> c = p.coefficients();
  const Rational lead = p.leading();
  for (auto& x : c) x /= lead;
  return RatPolynomial(std::move(c));
}

}  // namespace

RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
  while (!b.is_zero()) {
    RatPolynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

std::vector<SquareFreeFactor> square_free_decomposition(const RatPolynomial& p) {
  std::vector<SquareFreeFactor> out;
  if (p.degree() < 1) return out;
  const RatPolynomial f = make_monic(p);
  const RatPolynomial df = derivative(f);
  RatPolynomial a = gcd(f, df);
  RatPolynomial b = divmod(f, a).quotient;
  RatPolynomial c = divmod(df, a).quotient;
  RatPolynomial d = c - derivative(b);
  int multiplicity = 1;
  while (b.degree() >= 1) {
    RatPolynomial g = gcd(b, d);
    if (g.degree() >= 1) out.push_back({g, multiplicity});
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - derivative(b);
    ++multiplicity;
  }
  return out;
}

std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Int c = p.coefficient(i);
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "T";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {

void reduce_content(std::vector<Int>& vec, std::vector<Int>& combo) {
  Int g = 0;
  for (const auto& x : vec) {
    if (x != 0) g = mp::gcd(g, x);
    if (g == 1) return;
  }
  for (const auto& x : combo) {
    if (x != 0) g = mp::gcd(g, x);
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& x : vec) x /= g;
  for (auto& x : combo) x /= g;
}

}  // namespace

IntPolynomial minimal_polynomial(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("minimal polynomial needs a square matrix");
  const auto n = static_cast<std::size_t>(m.rows());

  struct EchelonRow {
    std::vector<Int> vec;    // vectorized combination of powers
    std::vector<Int> combo;  // vec = sum combo[i] * vec(M^i)
    std::size_t pivot;
  };
  std::vector<EchelonRow> basis;

  IntMatrix power = IntMatrix::Identity(m.rows(), m.cols());
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Int> vec(power.data(), power.data() + power.size());
    std::vector<Int> combo(k + 1, Int(0));
    combo[k] = 1;
    for (const auto& row : basis) {
      if (vec[row.pivot] == 0) continue;
      const Int scale = row.vec[row.pivot];
      const Int factor = vec[row.pivot];
      for (std::size_t i = 0; i < vec.size(); ++i) vec[i] = scale * vec[i] - factor * row.vec[i];
      for (std::size_t i = 0; i < row.combo.size(); ++i) {
        combo[i] = scale * combo[i] - factor * row.combo[i];
      }
      for (std::size_t i = row.combo.size(); i < combo.size(); ++i) combo[i] *= scale;
      reduce_content(vec, combo);
    }
    auto nz = std::find_if(vec.begin(), vec.end(), [](const Int& x) { return x != 0; });
    if (nz == vec.end()) {
      const Int lead = combo[k];
      for (auto& c : combo) {
        if (c % lead != 0) throw NumericalError("minimal polynomial has non-integer coefficients");
        c /= lead;
      }
      return IntPolynomial(std::move(combo));
    }
    const auto pivot = static_cast<std::size_t>(nz - vec.begin());
    basis.push_back({std::move(vec), std::move(combo), pivot});
    power = (power * m).eval();
  }
  throw NumericalError("no annihilating polynomial up to the matrix order");
}

namespace {

using Complex = std::complex<long double>;

struct Evaluated {
  Complex value;
  Complex slope;
};

Evaluated horner(const std::vector<long double>& c, Complex z) {
  Complex v = 0;
  Complex dv = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * z + v;
    v = v * z + *it;
  }
  return {v, dv};
}

std::vector<Root> roots_of_square_free(const RatPolynomial& g, int multiplicity,
                                       int max_iterations) {
  const int n = g.degree();
  std::vector<Root> out;
  if (n == 1) {
    // Monic linear factor: the root is exact.
    const double z = static_cast<double>((-g.coefficient(0) / g.leading()).convert_to<double>());
    out.push_back({std::complex<double>(z, 0.0), multiplicity, 0.0});
    return out;
  }
  std::vector<long double> coeffs;
  for (const auto& c : g.coefficients()) coeffs.push_back(c.convert_to<long double>());

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -static_cast<double>(coeffs[i] / coeffs[n]);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");

  long double scale = 0;
  for (auto c : coeffs) scale += std::abs(c);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    Complex z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    long double residual = 0;
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
      auto [v, dv] = horner(coeffs, z);
      residual = std::abs(v);
      if (dv == Complex(0)) break;
      const Complex step = v / dv;
      z -= step;
      if (std::abs(step) <= 1e-17L * std::max<long double>(1, std::abs(z))) {
        converged = true;
        residual = std::abs(horner(coeffs, z).value);
        break;
      }
    }
    const long double magnitude = std::pow(std::max<long double>(1, std::abs(z)), n);
    if (!converged && residual > 1e-12L * scale * magnitude) {
      throw NumericalError("root refinement did not converge; residual " +
                           std::to_string(static_cast<double>(residual)));
    }
    // Conjugate pairs cannot sit this close to the real axis in a
    // square-free factor, so a tiny imaginary part is rounding noise.
    const long double noise = 1e-12L * std::max<long double>(1, std::abs(z));
    if (std::abs(z.imag()) < noise) z.imag(0);
    // Same for real parts: the results are only claimed to about 1e-12.
    if (std::abs(z.real()) < noise) z.real(0);
    out.push_back({std::complex<double>(static_cast<double>(z.real()),
                                        static_cast<double>(z.imag())),
                   multiplicity, static_cast<double>(residual)});
  }
  // A square-free factor has distinct roots; coincident refined roots mean
  // Newton collapsed two starting points onto one root.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (std::abs(out[i].value - out[j].value) < 1e-9) {
        throw NumericalError("root refinement merged distinct roots");
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Root> roots(const RatPolynomial& p, int max_iterations) {
  std::vector<Root> out;
  for (const auto& [factor, multiplicity] : square_free_decomposition(p)) {
    auto part = roots_of_square_free(factor, multiplicity, max_iterations);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace stern
