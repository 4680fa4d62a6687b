#pragma once

// Sparse Laurent polynomials over Q in t^Q and auxiliary variables s_i^Z.
// This is the numerator/denominator ring of the coefficient field.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valvol/value.hpp"

namespace valvol {

/// t^e * prod s_i^{k_i}; `s` is sorted by variable index with no zero exponents.
struct Monomial {
  Rational t = 0;
  std::vector<std::pair<std::uint32_t, std::int32_t>> s;

  bool is_one() const { return t == 0 && s.empty(); }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.t == b.t && a.s == b.s; }
};

/// Lexicographic comparison, t first, then s-exponents as a dense vector.
/// This is a total order compatible with multiplication.
int compare(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& a);

struct Term {
  Monomial mono;
  Rational coef;
};

class LPoly {
 public:
  LPoly() = default;
  LPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static LPoly term(const Rational& c, Monomial m);
  static LPoly t_pow(const Rational& e) { return term(1, Monomial{e, {}}); }
  static LPoly s_var(std::uint32_t index, std::int32_t exponent = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_single_term() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool has_s() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& trailing() const { return terms_.front(); }
  const Term& leading() const { return terms_.back(); }

  /// Minimal t-exponent (INF for zero): the Gauss valuation of a polynomial.
  Value min_t() const;

  LPoly operator-() const;
  friend LPoly operator+(const LPoly& a, const LPoly& b);
  friend LPoly operator-(const LPoly& a, const LPoly& b);
  friend LPoly operator*(const LPoly& a, const LPoly& b);
  LPoly scaled(const Rational& c) const;
  LPoly times(const Rational& c, const Monomial& m) const;

  /// q with a == q*b, if it exists. Throws DivisionByZero when b == 0.
  std::optional<LPoly> exact_div(const LPoly& b) const;

  /// Substitutes the listed s-variables by nonzero rationals.
  LPoly specialize(const std::map<std::uint32_t, Rational>& values) const;

  /// All s-variable indices occurring.
  std::vector<std::uint32_t> s_vars() const;

  friend bool operator==(const LPoly& a, const LPoly& b);

  std::string str() const;

 private:
  explicit LPoly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  static LPoly from_unsorted(std::vector<Term> terms);

  std::vector<Term> terms_;  // ascending in `compare`, nonzero coefficients
};

/// gcd of two polynomials in t alone (no s), monic in the top t-power, or
/// nullopt when either operand involves s-variables.
std::optional<LPoly> univariate_gcd(const LPoly& a, const LPoly& b);

}  // namespace valvol
