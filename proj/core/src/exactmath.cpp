#include "modalkit/exactmath.hpp"

#include <charconv>
#include <ostream>

namespace modalkit {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p > kMaxModulus) {
    throw CompositeModulus("modulus " + std::to_string(p) + " exceeds the supported range");
  }
  if (!is_prime(p)) {
    throw CompositeModulus("modulus " + std::to_string(p) + " is not prime");
  }
}

FieldElement PrimeField::make(std::int64_t n) const {
  std::int64_t r = n % p_;
  if (r < 0) r += p_;
  return FieldElement(r, p_);
}

FieldElement PrimeField::zero() const { return FieldElement(0, p_); }
FieldElement PrimeField::one() const { return FieldElement(1 % p_, p_); }

FieldElement fp_make(std::int64_t p, std::int64_t n) { return PrimeField(p).make(n); }

void FieldElement::require_same_field(const FieldElement& o) const {
  if (p_ != o.p_) {
    throw FieldMismatch("GF(" + std::to_string(p_) + ") vs GF(" + std::to_string(o.p_) + ")");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(o);
  std::int64_t s = value_ + o.value_;
  if (s >= p_) s -= p_;
  return FieldElement(s, p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(o);
  std::int64_t s = value_ - o.value_;
  if (s < 0) s += p_;
  return FieldElement(s, p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(o);
  return FieldElement((value_ * o.value_) % p_, p_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : p_ - value_, p_);
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw ZeroInverse("0 has no inverse in GF(" + std::to_string(p_) + ")");
  std::int64_t r0 = p_, r1 = value_;
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += p_;
  return FieldElement(t0, p_);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.value(); }

// ---------------------------------------------------------------------------

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational with zero denominator");
  canonicalize();
}

void Rational::canonicalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed rational '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
      }
    }
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), BigInt(1));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational Rational::operator+(const Rational& o) const {
  if (den_ == o.den_) return Rational(num_ + o.num_, den_);
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  if (den_ == o.den_) return Rational(num_ - o.num_, den_);
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw DivisionByZero("division by zero rational");
  return Rational(num_ * o.den_, den_ * o.num_);
}

Rational Rational::operator-() const { return Rational(-num_, den_, Unchecked{}); }

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("zero rational has no inverse");
  return Rational(den_, num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

}  // namespace modalkit
