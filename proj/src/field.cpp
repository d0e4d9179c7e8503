#include "algdet/field.hpp"

#include <charconv>

namespace algdet {

FieldSpec FieldSpec::gf(std::uint64_t p) {
  if (p < 2 || p >= (1ull << 31))
    fail(Errc::bad_field, "GF modulus must satisfy 2 <= p < 2^31, got " + std::to_string(p));
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      fail(Errc::bad_field, "GF modulus " + std::to_string(p) + " is not prime (divisible by " +
                                std::to_string(d) + ")");
  FieldSpec s;
  s.kind = FieldKind::prime;
  s.p = static_cast<std::uint32_t>(p);
  return s;
}

std::string FieldSpec::name() const {
  return kind == FieldKind::prime ? "GF(" + std::to_string(p) + ")" : "QQ";
}

FieldValue FieldValue::zero(const FieldSpec& s) {
  FieldValue v;
  v.spec_ = s;
  return v;
}

FieldValue FieldValue::one(const FieldSpec& s) { return of_int(s, 1); }

FieldValue FieldValue::of_int(const FieldSpec& s, long long v) {
  FieldValue r;
  r.spec_ = s;
  if (s.kind == FieldKind::prime) {
    std::int64_t m = v % static_cast<std::int64_t>(s.p);
    if (m < 0) m += s.p;
    r.res_ = m;
  } else {
    r.rat_ = v;
  }
  return r;
}

FieldValue FieldValue::of_rational(Rational q) {
  FieldValue r;
  r.spec_ = FieldSpec::qq();
  r.rat_ = std::move(q);
  return r;
}

FieldValue FieldValue::parse(const FieldSpec& s, std::string_view text) {
  auto bad = [&] {
    fail(Errc::parse, "malformed scalar '" + std::string(text) + "' for " + s.name());
  };
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (s.kind == FieldKind::prime) bad();
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (den.empty()) bad();
  }
  auto parse_int = [&](std::string_view t) -> long long {
    bool neg = !t.empty() && t.front() == '-';
    if (neg) t.remove_prefix(1);
    if (t.empty()) bad();
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) bad();
    return neg ? -v : v;
  };
  if (s.kind == FieldKind::prime) return of_int(s, parse_int(num));
  // Rationals can exceed long long; go through cpp_int string parsing.
  auto parse_big = [&](std::string_view t) -> boost::multiprecision::cpp_int {
    if (t.empty() || (t.size() == 1 && t[0] == '-')) bad();
    for (std::size_t i = (t[0] == '-' ? 1 : 0); i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') bad();
    return boost::multiprecision::cpp_int(std::string(t));
  };
  boost::multiprecision::cpp_int n = parse_big(num);
  boost::multiprecision::cpp_int d = den.empty() ? 1 : parse_big(den);
  if (d == 0) fail(Errc::division_by_zero, "scalar denominator is zero in '" + std::string(text) + "'");
  return of_rational(Rational(n, d));
}

bool FieldValue::is_zero() const {
  return spec_.kind == FieldKind::prime ? res_ == 0 : rat_ == 0;
}

bool FieldValue::is_one() const {
  return spec_.kind == FieldKind::prime ? res_ == 1 % spec_.p : rat_ == 1;
}

void FieldValue::check_same(const FieldValue& o) const {
  if (!(spec_ == o.spec_))
    fail(Errc::spec_mismatch,
         "field mismatch: " + spec_.name() + " vs " + o.spec_.name());
}

FieldValue FieldValue::operator+(const FieldValue& o) const {
  check_same(o);
  FieldValue r;
  r.spec_ = spec_;
  if (spec_.kind == FieldKind::prime) {
    r.res_ = res_ + o.res_;
    if (r.res_ >= spec_.p) r.res_ -= spec_.p;
  } else {
    r.rat_ = rat_ + o.rat_;
  }
  return r;
}

FieldValue FieldValue::operator-(const FieldValue& o) const {
  check_same(o);
  FieldValue r;
  r.spec_ = spec_;
  if (spec_.kind == FieldKind::prime) {
    r.res_ = res_ - o.res_;
    if (r.res_ < 0) r.res_ += spec_.p;
  } else {
    r.rat_ = rat_ - o.rat_;
  }
  return r;
}

FieldValue FieldValue::operator*(const FieldValue& o) const {
  check_same(o);
  FieldValue r;
  r.spec_ = spec_;
  if (spec_.kind == FieldKind::prime)
    r.res_ = (res_ * o.res_) % spec_.p;  // p < 2^31 keeps the product in int64
  else
    r.rat_ = rat_ * o.rat_;
  return r;
}

FieldValue FieldValue::operator-() const {
  FieldValue r;
  r.spec_ = spec_;
  if (spec_.kind == FieldKind::prime)
    r.res_ = res_ == 0 ? 0 : spec_.p - res_;
  else
    r.rat_ = -rat_;
  return r;
}

FieldValue FieldValue::inv() const {
  if (is_zero()) fail(Errc::division_by_zero, "inverse of zero in " + spec_.name());
  FieldValue r;
  r.spec_ = spec_;
  if (spec_.kind == FieldKind::prime) {
    // extended Euclid on (res_, p)
    std::int64_t a = res_, b = spec_.p, x0 = 1, x1 = 0;
    while (b) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    x0 %= static_cast<std::int64_t>(spec_.p);
    if (x0 < 0) x0 += spec_.p;
    r.res_ = x0;
  } else {
    r.rat_ = 1 / rat_;
  }
  return r;
}

FieldValue FieldValue::operator/(const FieldValue& o) const {
  check_same(o);
  return *this * o.inv();
}

bool FieldValue::operator==(const FieldValue& o) const {
  check_same(o);
  return spec_.kind == FieldKind::prime ? res_ == o.res_ : rat_ == o.rat_;
}

std::string FieldValue::str() const {
  if (spec_.kind == FieldKind::prime) return std::to_string(res_);
  if (denominator(rat_) == 1) return numerator(rat_).str();
  return numerator(rat_).str() + "/" + denominator(rat_).str();
}

std::int64_t FieldValue::residue() const {
  if (spec_.kind != FieldKind::prime)
    fail(Errc::spec_mismatch, "residue() on a rational value");
  return res_;
}

const Rational& FieldValue::rational() const {
  if (spec_.kind != FieldKind::rationals)
    fail(Errc::spec_mismatch, "rational() on a GF value");
  return rat_;
}

}  // namespace algdet
