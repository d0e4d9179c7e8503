#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "algdet/error.hpp"

namespace algdet {

using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind : std::uint8_t { prime, rationals };

// Tiny value type naming the coefficient field: GF(p) for a verified prime
// p < 2^31, or the rationals. Cheap to copy and compare, so every scalar can
// carry one and mixed-field arithmetic is caught at the call site.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t p = 0;

  static FieldSpec gf(std::uint64_t p);
  static FieldSpec qq() { return {}; }

  bool is_prime_field() const { return kind == FieldKind::prime; }
  std::string name() const;
  bool operator==(const FieldSpec&) const = default;
};

// One exact scalar. GF(p) values live as canonical residues in [0, p);
// rational values as reduced fractions with positive denominator.
class FieldValue {
 public:
  FieldValue() = default;  // rational zero

  static FieldValue zero(const FieldSpec& s);
  static FieldValue one(const FieldSpec& s);
  static FieldValue of_int(const FieldSpec& s, long long v);
  static FieldValue of_rational(Rational r);
  // Textual syntax: optional leading '-', decimal digits, and for the
  // rationals an optional '/denominator'.
  static FieldValue parse(const FieldSpec& s, std::string_view text);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  FieldValue operator+(const FieldValue& o) const;
  FieldValue operator-(const FieldValue& o) const;
  FieldValue operator*(const FieldValue& o) const;
  FieldValue operator/(const FieldValue& o) const;
  FieldValue operator-() const;
  FieldValue inv() const;
  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator-=(const FieldValue& o) { return *this = *this - o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }

  bool operator==(const FieldValue& o) const;
  bool operator!=(const FieldValue& o) const { return !(*this == o); }

  std::string str() const;

  // Payload accessors; calling the wrong one is a program bug, checked.
  std::int64_t residue() const;
  const Rational& rational() const;

 private:
  void check_same(const FieldValue& o) const;

  FieldSpec spec_{};
  std::int64_t res_ = 0;
  Rational rat_{};
};

}  // namespace algdet
