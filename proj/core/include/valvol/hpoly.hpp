#pragma once

// Homogeneous polynomials over K in X0..Xn (deglex order), monomial bases,
// projective points and the hatted evaluations vf and f-hat.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "valvol/field.hpp"
#include "valvol/linalg.hpp"

namespace valvol {

using Exponent = std::vector<int>;

/// Deglex "greater": higher total degree first, then lexicographically larger
/// exponent of X0, X1, ...
struct DeglexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class HPoly {
 public:
  using TermMap = std::map<Exponent, FieldElem, DeglexGreater>;

  HPoly() = default;
  HPoly(std::size_t nvars, int degree);

  static HPoly monomial(const Exponent& e, const FieldElem& c = FieldElem(1));
  static HPoly variable(std::size_t nvars, std::size_t i);
  static HPoly constant(std::size_t nvars, const FieldElem& c);

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  FieldElem coeff(const Exponent& e) const;
  /// Adds c * X^e; throws DimensionError on wrong arity or degree.
  void add_term(const Exponent& e, const FieldElem& c);

  /// Deglex leading exponent; throws DomainError on zero.
  const Exponent& leading_exponent() const;
  const FieldElem& leading_coeff() const;

  /// min over coefficients of their valuation.
  Value vtilde(const FieldCtx& ctx = FieldCtx::gauss()) const;
  FieldElem eval(const Vec& x) const;

  friend HPoly operator+(const HPoly& a, const HPoly& b);
  friend HPoly operator-(const HPoly& a, const HPoly& b);
  friend HPoly operator*(const HPoly& a, const HPoly& b);
  friend bool operator==(const HPoly& a, const HPoly& b);
  HPoly operator-() const;
  HPoly scaled(const FieldElem& c) const;
  HPoly pow(unsigned k) const;
  /// Exact division by another homogeneous polynomial, if it divides.
  std::optional<HPoly> divide(const HPoly& b) const;
  HPoly specialize(const std::map<std::uint32_t, Rational>& values) const;
  bool has_s() const;

  /// ASCII, e.g. "t*X0^2 + 1/2*X0*X1".
  std::string str() const;

 private:
  std::size_t nvars_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const HPoly& f);

/// Exponents of all degree-m monomials in n+1 variables, deglex descending.
std::vector<Exponent> monomial_exponents(std::size_t n, int m);
/// The monomials themselves (n is the projective dimension).
std::vector<HPoly> monomial_basis(std::size_t n, int m);
/// C(m+n, n).
std::size_t monomial_count(std::size_t n, int m);

/// Position of each degree-m monomial in the deglex basis.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t n, int m);
  std::size_t size() const { return exps_.size(); }
  const std::vector<Exponent>& exponents() const { return exps_; }
  const Exponent& operator[](std::size_t i) const { return exps_[i]; }
  /// Throws DomainError if e is not a degree-m exponent in n+1 variables.
  std::size_t index(const Exponent& e) const;
  /// Coefficient vector of f in this basis.
  Vec coords(const HPoly& f) const;
  HPoly poly(const Vec& coeffs) const;

 private:
  std::size_t n_;
  int m_;
  std::vector<Exponent> exps_;
  std::map<Exponent, std::size_t> pos_;
};

/// A point of P^n(K) given by homogeneous coordinates, not all zero.
class ProjPoint {
 public:
  explicit ProjPoint(Vec x);
  const Vec& coords() const { return x_; }
  std::size_t size() const { return x_.size(); }
  const FieldElem& operator[](std::size_t i) const { return x_[i]; }

 private:
  Vec x_;
};

/// v(f(x)) - deg(f) * min_i v(x_i); in [0, INF], depends only on [x].
Value vf_eval(const HPoly& f, const ProjPoint& xi, const FieldCtx& ctx = FieldCtx::gauss());
/// vf(xi) / deg f; degree 0 rejected.
Value hat_eval(const HPoly& f, const ProjPoint& xi, const FieldCtx& ctx = FieldCtx::gauss());

}  // namespace valvol
