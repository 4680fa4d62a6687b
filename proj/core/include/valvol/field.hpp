#pragma once

// The valued coefficient field K = Frac(Q[t^Q][s_1, s_2, ...]) with the Gauss
// valuation v(t) = 1, v(s_i) = 0 and the s_i generic, plus a p-adic instance
// on Q behind the same FieldCtx interface.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>

#include "valvol/lpoly.hpp"
#include "valvol/value.hpp"

namespace valvol {

/// An element num/den of K, kept in canonical form: no common factor that
/// is detected by exact division (or by univariate gcd for t-only data), and
/// the lowest term of the denominator equal to 1.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const Rational& q) : num_(q), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
  FieldElem(long q) : FieldElem(Rational(q)) {}                 // NOLINT(google-explicit-constructor)
  explicit FieldElem(LPoly num) : num_(std::move(num)), den_(Rational(1)) {}
  /// Throws DivisionByZero when den == 0.
  FieldElem(LPoly num, LPoly den);

  static FieldElem t_pow(const Rational& e) { return FieldElem(LPoly::t_pow(e)); }
  static FieldElem s_var(std::uint32_t index) { return FieldElem(LPoly::s_var(index)); }

  const LPoly& num() const { return num_; }
  const LPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return den_.is_constant() && num_.is_constant(); }
  /// The rational value of a constant element; throws DomainError otherwise.
  Rational to_rational() const;
  bool has_s() const { return num_.has_s() || den_.has_s(); }

  /// Gauss valuation: min t-exponent of numerator minus that of denominator.
  Value val() const;

  /// Throws DivisionByZero on zero.
  FieldElem inv() const;

  FieldElem operator-() const;
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  FieldElem pow(unsigned k) const;
  FieldElem specialize(const std::map<std::uint32_t, Rational>& values) const;

  /// ASCII form, e.g. "3/2*t^(1/3)*s1 + 1" or "(t + 1)/(t^2 - 1)".
  std::string str() const;

 private:
  void normalize();

  LPoly num_;
  LPoly den_ = LPoly(Rational(1));
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

/// Gauss valuation; val(0) = INF.
inline Value val(const FieldElem& x) { return x.val(); }

/// p-adic valuation of a rational; INF for zero.
Value padic_val(const Rational& q, unsigned long p);

enum class FieldKind { Gauss, PAdic };

/// Which valued field the elements live in and how genericity is seeded.
struct FieldCtx {
  FieldKind kind = FieldKind::Gauss;
  unsigned long prime = 0;
  std::uint64_t seed = 0;

  static FieldCtx gauss(std::uint64_t seed = 0) { return FieldCtx{FieldKind::Gauss, 0, seed}; }
  static FieldCtx padic(unsigned long p, std::uint64_t seed = 0);

  /// Gauss valuation, or the p-adic valuation of a constant element.
  Value val(const FieldElem& x) const;
};

/// First index handed out for generic variables; parsed input uses smaller ones.
inline constexpr std::uint32_t kGenericVarBase = 1u << 20;

/// Deterministic supply of fresh v-generic elements. Each call adjoins a new
/// auxiliary variable, so returned tuples are independent over everything
/// built before them.
class GenericSource {
 public:
  explicit GenericSource(FieldCtx ctx, std::uint64_t stream = 0,
                         std::uint32_t first_var = kGenericVarBase);

  /// t^c * (1 + q*s) for a fresh s and a random nonzero rational q.
  /// In the p-adic instance: p^c times a random p-adic unit (c integral).
  FieldElem fresh_generic(const Value& c);
  std::uint32_t fresh_var() { return next_var_++; }
  /// Random nonzero rational with small height.
  Rational random_rational();
  /// Random rational in [-bound, bound] with denominator at most `den`.
  Rational random_in(long bound, long den);

  std::mt19937_64& rng() { return rng_; }
  const FieldCtx& ctx() const { return ctx_; }
  std::size_t calls() const { return calls_; }

 private:
  FieldCtx ctx_;
  std::mt19937_64 rng_;
  std::uint32_t next_var_;
  std::size_t calls_ = 0;
};

inline FieldElem fresh_generic(const Value& c, GenericSource& src) { return src.fresh_generic(c); }

/// Mixes a seed and a stream id into an RNG seed (splitmix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace valvol
