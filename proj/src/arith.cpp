#include "stern/arith.hpp"

#include <limits>

namespace stern {

void require_nat(const Nat& n, std::string_view what) {
  if (n < 0) throw DomainError(std::string(what) + " must be nonnegative");
}

unsigned bit_length(const Nat& n) {
  if (n <= 0) return 0;
  return static_cast<unsigned>(mp::msb(n)) + 1;
}

Nat pow2(unsigned r) {
  Nat p = 1;
  return p << r;
}

std::string to_string(const Int& n) { return n.str(); }

std::string to_string(const Rational& q) {
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

Nat parse_nat(std::string_view text) {
  if (text.empty()) throw DomainError("expected a nonnegative integer, got an empty string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw DomainError("expected a nonnegative integer, got '" + std::string(text) + "'");
    }
  }
  return Nat(std::string(text));
}

std::uint64_t to_u64(const Nat& n, std::string_view what) {
  require_nat(n, what);
  if (n > std::numeric_limits<std::uint64_t>::max()) {
    throw ResourceError(std::string(what) + " exceeds 64 bits");
  }
  return n.convert_to<std::uint64_t>();
}

PosRational::PosRational(Nat num, Nat den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_ < 0 || den_ < 0) throw DomainError("PosRational components must be nonnegative");
  if (den_ == 0) throw DomainError("PosRational denominator must be positive");
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Nat g = mp::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

PosRational PosRational::reciprocal() const {
  if (num_ == 0) throw DomainError("reciprocal of zero");
  return PosRational(den_, num_, Reduced{});
}

double PosRational::to_double() const { return to_rational().convert_to<double>(); }

std::string PosRational::str() const { return num_.str() + "/" + den_.str(); }

PosRational operator+(const PosRational& a, const PosRational& b) {
  return PosRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

PosRational operator*(const PosRational& a, const PosRational& b) {
  return PosRational(a.num_ * b.num_, a.den_ * b.den_);
}

PosRational operator/(const PosRational& a, const PosRational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const PosRational& a, const PosRational& b) {
  Nat lhs = a.num_ * b.den_;
  Nat rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace stern
