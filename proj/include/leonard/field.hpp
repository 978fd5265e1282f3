#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace leonard {

/// Names the base field: the rationals, or the integers modulo a prime.
class FieldSpec {
 public:
  enum class Kind { rationals, prime_field };

  /// Largest accepted modulus is below 2^31.
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  static FieldSpec rationals() { return FieldSpec(Kind::rationals, 0); }
  /// Throws InvalidField unless `p` is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "Q" or "p=<prime>".
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_rationals() const noexcept { return kind_ == Kind::rationals; }
  bool is_prime() const noexcept { return kind_ == Kind::prime_field; }
  /// Zero for the rationals.
  std::uint64_t modulus() const noexcept { return modulus_; }
  /// Zero for the rationals, p otherwise.
  std::uint64_t characteristic() const noexcept { return modulus_; }

  /// "Q" or "p=13", the same syntax `parse` accepts.
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

bool is_prime(std::uint64_t n);

/// An element of the field named by its FieldSpec. Rationals are kept as
/// reduced fractions, prime-field elements as residues in [0, p). Equality of
/// elements is equality of representations.
class FieldElement {
 public:
  /// Zero of the rationals; exists so containers can default-construct.
  FieldElement();

  static FieldElement zero(const FieldSpec& field);
  static FieldElement one(const FieldSpec& field);
  static FieldElement from_integer(const FieldSpec& field, long long value);
  static FieldElement from_integer(const FieldSpec& field, const mpz_class& value);
  /// num/den in the given field; throws DivisionByZero when den is zero there.
  static FieldElement from_fraction(const FieldSpec& field, long long num, long long den);
  /// Parses "[+-]digits" or "[+-]digits/digits". In a prime field the value
  /// is reduced, so "-1" and "12" name the same element of F_13.
  static FieldElement parse(const FieldSpec& field, std::string_view text);

  const FieldSpec& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  FieldElement inv() const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
  friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
  friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
  friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) { return lhs /= rhs; }
  FieldElement operator-() const;

  /// Throws FieldMismatch across fields, like every binary operation.
  friend bool operator==(const FieldElement& lhs, const FieldElement& rhs);

  /// Canonical serialization: "num/den" (den omitted when 1) or the residue.
  std::string to_string() const;

  /// Rational value; only valid over Q.
  const mpq_class& rational() const;
  /// Residue; only valid over F_p.
  std::uint64_t residue() const;

  /// x^n for n >= 0.
  FieldElement pow(unsigned n) const;

 private:
  FieldElement(const FieldSpec& field, mpq_class value);
  FieldElement(const FieldSpec& field, std::uint64_t residue);

  void require_same_field(const FieldElement& rhs) const;

  FieldSpec field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// A sequence of scalars such as theta_0..theta_d.
using Sequence = std::vector<FieldElement>;

}  // namespace leonard
