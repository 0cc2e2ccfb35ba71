#pragma once

// Exact scalars: residues modulo a prime and arbitrary-precision rationals.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "modalkit/error.hpp"

namespace modalkit {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic trial-division primality test.
bool is_prime(std::int64_t n);

class FieldElement;

/// The field GF(p). Moduli are limited to p < 2^31 so products fit in 64 bits.
class PrimeField {
 public:
  using Element = FieldElement;

  static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

  /// Throws CompositeModulus unless p is a prime in [2, kMaxModulus].
  explicit PrimeField(std::int64_t p);

  std::int64_t modulus() const { return p_; }

  FieldElement make(std::int64_t n) const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::int64_t p_;
};

/// A residue in [0, p). Carries its modulus so mixed-field arithmetic is caught.
class FieldElement {
 public:
  std::int64_t value() const { return value_; }
  std::int64_t modulus() const { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  /// Multiplicative inverse by the extended Euclidean algorithm; throws ZeroInverse.
  FieldElement inverse() const;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  std::string to_string() const { return std::to_string(value_); }

 private:
  friend class PrimeField;
  FieldElement(std::int64_t value, std::int64_t p) : value_(value), p_(p) {}
  void require_same_field(const FieldElement& o) const;

  std::int64_t value_;
  std::int64_t p_;
};

/// n mod p in canonical range; throws CompositeModulus when p is not prime.
FieldElement fp_make(std::int64_t p, std::int64_t n);

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Reduced fraction with positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(BigInt num, BigInt den);

  /// Parses "n" or "n/d" (optional leading sign on n). Throws ParseError.
  static Rational parse(std::string_view text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  /// Throws DivisionByZero.
  Rational operator/(const Rational& o) const;
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  /// Throws DivisionByZero.
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "num/den", with "/den" omitted when den = 1.
  std::string to_string() const;

 private:
  struct Unchecked {};
  Rational(BigInt num, BigInt den, Unchecked) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// Field descriptor for the rationals, mirroring PrimeField's interface.
struct RationalField {
  using Element = Rational;
  Rational make(std::int64_t n) const { return Rational(n); }
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

}  // namespace modalkit
