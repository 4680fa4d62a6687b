#include "valvol/value.hpp"

#include <ostream>

#include "valvol/errors.hpp"

namespace valvol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-')
    throw InputError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class zn(n), zd{std::string(den)};
  if (zd == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q(zn, zd);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

const Rational& Value::rational() const {
  if (inf_) throw DomainError("INF has no rational value");
  return q_;
}

Value operator+(const Value& a, const Value& b) {
  if (a.inf_ || b.inf_) return Value::inf();
  return Value(Rational(a.q_ + b.q_));
}

Value operator-(const Value& a, const Value& b) {
  if (b.inf_) throw DomainError("subtracting INF would leave the value group");
  if (a.inf_) return Value::inf();
  return Value(Rational(a.q_ - b.q_));
}

Value Value::operator-() const {
  if (inf_) throw DomainError("-INF is not representable");
  return Value(Rational(-q_));
}

Value operator*(const Rational& k, const Value& a) {
  if (a.inf_) {
    if (k == 0) return Value(0);
    if (k < 0) throw DomainError("negative multiple of INF");
    return Value::inf();
  }
  return Value(Rational(k * a.q_));
}

Value operator/(const Value& a, const Rational& k) {
  if (k == 0) throw DivisionByZero("value divided by zero");
  return Rational(1 / k) * a;
}

bool operator==(const Value& a, const Value& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.q_ == b.q_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.inf_ || b.inf_) {
    if (a.inf_ == b.inf_) return std::strong_ordering::equal;
    return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Value::str() const { return inf_ ? std::string("inf") : to_string(q_); }

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

Value parse_value(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "INF" || s == "+inf") return Value::inf();
  return Value(parse_rational(s));
}

Value vdist(const Value& a, const Value& b) {
  if (a.is_inf() && b.is_inf()) return Value(0);
  if (a.is_inf() || b.is_inf()) return Value::inf();
  Rational d = a.rational() - b.rational();
  return Value(Rational(abs(d)));
}

}  // namespace valvol
