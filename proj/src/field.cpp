#include "leonard/field.hpp"

#include <charconv>
#include <utility>
#include <ostream>

#include "leonard/error.hpp"

namespace leonard {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > kMaxModulus) {
    throw Error(ErrorKind::InvalidField, "modulus " + std::to_string(p) + " exceeds 2^31-1");
  }
  if (!leonard::is_prime(p)) {
    throw Error(ErrorKind::InvalidField, "modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(Kind::prime_field, p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q" || text == "q") return rationals();
  if (text.starts_with("p=")) {
    auto digits = text.substr(2);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return prime(p);
    }
  }
  throw Error(ErrorKind::InvalidField, "expected 'Q' or 'p=<prime>', got '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  return is_rationals() ? std::string("Q") : "p=" + std::to_string(modulus_);
}

namespace {

std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
  mpz_class r = v % mpz_class(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 64-bit values; p < 2^31 keeps everything in range.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::string digits(s.substr(start));
  out.set_str(digits, 10);
  if (s[0] == '-') out = -out;
  return true;
}

}  // namespace

FieldElement::FieldElement() : field_(FieldSpec::rationals()), value_(mpq_class(0)) {}

FieldElement::FieldElement(const FieldSpec& field, mpq_class value)
    : field_(field), value_(std::move(value)) {
  std::get<mpq_class>(value_).canonicalize();
}

FieldElement::FieldElement(const FieldSpec& field, std::uint64_t residue)
    : field_(field), value_(residue) {}

FieldElement FieldElement::zero(const FieldSpec& field) { return from_integer(field, 0); }

FieldElement FieldElement::one(const FieldSpec& field) { return from_integer(field, 1); }

FieldElement FieldElement::from_integer(const FieldSpec& field, long long value) {
  if (field.is_rationals()) return FieldElement(field, mpq_class(static_cast<long>(value)));
  auto p = static_cast<long long>(field.modulus());
  long long r = value % p;
  if (r < 0) r += p;
  return FieldElement(field, static_cast<std::uint64_t>(r));
}

FieldElement FieldElement::from_integer(const FieldSpec& field, const mpz_class& value) {
  if (field.is_rationals()) return FieldElement(field, mpq_class(value));
  return FieldElement(field, reduce(value, field.modulus()));
}

FieldElement FieldElement::from_fraction(const FieldSpec& field, long long num, long long den) {
  return from_integer(field, num) / from_integer(field, den);
}

FieldElement FieldElement::parse(const FieldSpec& field, std::string_view text) {
  auto slash = text.find('/');
  mpz_class num, den = 1;
  bool ok = parse_integer(text.substr(0, slash), num);
  if (ok && slash != std::string_view::npos) {
    auto rest = text.substr(slash + 1);
    ok = !rest.empty() && rest[0] != '+' && rest[0] != '-' && parse_integer(rest, den);
  }
  if (!ok) {
    throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' is not an integer or fraction");
  }
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  if (field.is_rationals()) return FieldElement(field, mpq_class(num, den));
  return from_integer(field, num) / from_integer(field, den);
}

bool FieldElement::is_zero() const noexcept {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool FieldElement::is_one() const noexcept {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

void FieldElement::require_same_field(const FieldElement& rhs) const {
  if (!(field_ == rhs.field_)) {
    throw Error(ErrorKind::FieldMismatch, "operands from " + field_.to_string() + " and " +
                                              rhs.field_.to_string());
  }
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (field_.is_rationals()) return FieldElement(field_, mpq_class(1) / std::get<mpq_class>(value_));
  return FieldElement(field_, inverse_mod(std::get<std::uint64_t>(value_), field_.modulus()));
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (field_.is_rationals()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = (v + std::get<std::uint64_t>(rhs.value_)) % field_.modulus();
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (field_.is_rationals()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = (v + field_.modulus() - std::get<std::uint64_t>(rhs.value_)) % field_.modulus();
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (field_.is_rationals()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
  } else {
    auto& v = std::get<std::uint64_t>(value_);
    v = (v * std::get<std::uint64_t>(rhs.value_)) % field_.modulus();
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  require_same_field(rhs);
  return *this *= rhs.inv();
}

FieldElement FieldElement::operator-() const {
  if (field_.is_rationals()) return FieldElement(field_, mpq_class(-std::get<mpq_class>(value_)));
  auto v = std::get<std::uint64_t>(value_);
  return FieldElement(field_, v == 0 ? 0 : field_.modulus() - v);
}

bool operator==(const FieldElement& lhs, const FieldElement& rhs) {
  lhs.require_same_field(rhs);
  return lhs.value_ == rhs.value_;
}

std::string FieldElement::to_string() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_).get_str(10);
  return std::to_string(std::get<std::uint64_t>(value_));
}

const mpq_class& FieldElement::rational() const {
  if (!field_.is_rationals()) throw Error(ErrorKind::FieldMismatch, "rational() on " + field_.to_string());
  return std::get<mpq_class>(value_);
}

std::uint64_t FieldElement::residue() const {
  if (!field_.is_prime()) throw Error(ErrorKind::FieldMismatch, "residue() on Q");
  return std::get<std::uint64_t>(value_);
}

FieldElement FieldElement::pow(unsigned n) const {
  FieldElement result = one(field_);
  FieldElement base = *this;
  while (n != 0) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

}  // namespace leonard
