#pragma once

// Extended value group Q u {+inf} with min-plus semantics.

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace valvol {

using Rational = mpq_class;

/// Parses "p", "-p/q" (whitespace tolerant). Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical text of a rational: "p" or "p/q".
std::string to_string(const Rational& q);

/// An element of Q u {+inf}. -inf is not representable: operations that would
/// produce it throw DomainError.
class Value {
 public:
  Value() = default;  // zero
  Value(const Rational& q) : q_(q) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Value(long q) : q_(q) {}             // NOLINT(google-explicit-constructor)

  static Value inf() {
    Value v;
    v.inf_ = true;
    return v;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }

  /// The rational value; throws DomainError on INF.
  const Rational& rational() const;

  friend Value operator+(const Value& a, const Value& b);
  /// a - b; INF - finite = INF, anything - INF throws.
  friend Value operator-(const Value& a, const Value& b);
  /// Negation of a finite value.
  Value operator-() const;
  Value& operator+=(const Value& b) { return *this = *this + b; }

  /// Scalar multiple. 0 * INF = 0; negative * INF throws.
  friend Value operator*(const Rational& k, const Value& a);
  friend Value operator/(const Value& a, const Rational& k);

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  /// "p/q" or "inf".
  std::string str() const;

 private:
  bool inf_ = false;
  Rational q_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

/// Parses a rational literal or "inf".
Value parse_value(std::string_view text);

inline Value vmin(const Value& a, const Value& b) { return b < a ? b : a; }
inline Value vmax(const Value& a, const Value& b) { return a < b ? b : a; }

/// |a - b| with |INF - INF| = 0 and |finite - INF| = INF.
Value vdist(const Value& a, const Value& b);

}  // namespace valvol
