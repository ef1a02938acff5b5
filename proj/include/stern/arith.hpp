#pragma once

// Exact scalar types shared by every module: arbitrary-precision integers,
// reduced nonnegative fractions, and the error hierarchy.

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stern {

namespace mp = boost::multiprecision;

/// Signed arbitrary-precision integer.
using Int = mp::mpz_int;
/// Nonnegative arbitrary-precision integer. Nonnegativity is checked by the
/// operations that accept one (see require_nat).
using Nat = mp::mpz_int;
/// Signed exact rational, used where values can go negative (bounds, polynomials).
using Rational = mp::mpq_rational;

/// Precondition violated by the caller (exit code 2 in the CLI).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A configured size cap would be exceeded (exit code 3 in the CLI).
struct ResourceError : std::length_error {
  using std::length_error::length_error;
};

/// Iterative numerics did not converge (exit code 4 in the CLI).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_nat(const Nat& n, std::string_view what);

/// Number of binary digits; 0 for 0.
unsigned bit_length(const Nat& n);
Nat pow2(unsigned r);
std::string to_string(const Int& n);
std::string to_string(const Rational& q);
/// Parses a nonnegative decimal integer; throws DomainError on bad input.
Nat parse_nat(std::string_view text);
/// Exact conversion when it fits; throws ResourceError otherwise.
std::uint64_t to_u64(const Nat& n, std::string_view what);

/// Reduced fraction num/den with den >= 1 and num >= 0. Zero is 0/1.
class PosRational {
 public:
  PosRational() : num_(0), den_(1) {}
  PosRational(Nat num, Nat den = 1);

  const Nat& num() const { return num_; }
  const Nat& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  PosRational reciprocal() const;
  Rational to_rational() const { return Rational(num_, den_); }
  double to_double() const;
  /// "p/q", always with the denominator.
  std::string str() const;

  friend PosRational operator+(const PosRational& a, const PosRational& b);
  friend PosRational operator*(const PosRational& a, const PosRational& b);
  friend PosRational operator/(const PosRational& a, const PosRational& b);
  friend bool operator==(const PosRational& a, const PosRational& b) = default;
  friend std::strong_ordering operator<=>(const PosRational& a, const PosRational& b);

 private:
  struct Reduced {};
  PosRational(Nat num, Nat den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  Nat num_;
  Nat den_;
};

}  // namespace stern
