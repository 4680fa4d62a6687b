#pragma once

// Independent reference computations used only by the tests. None of these
// call into the elimination code of the library.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "valvol/value.hpp"

namespace oracle {

using valvol::Rational;
using valvol::Value;

/// p-adic valuation by repeated division of numerator and denominator.
inline Value padic(const Rational& q, unsigned long p) {
  if (q == 0) return Value::inf();
  mpz_class num = q.get_num(), den = q.get_den();
  long v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return Value(v);
}

/// Dual of the toric divisor min_i (X_i-hat + c_i) at X^alpha. Writing w_i
/// for v(xi_i) the dual is inf_w sum alpha_i w_i - m min_i (w_i + c_i); with
/// lambda = min_i (w_i + c_i) each w_i >= lambda - c_i, so the infimum is
/// -sum alpha_i c_i, attained at w_i = -c_i.
inline Rational toric_dual(const std::vector<Rational>& c, const std::vector<int>& alpha) {
  Rational s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s -= alpha[i] * c[i];
  return s;
}

/// The same infimum by brute force over a grid of valuation vectors w with
/// entries in the given candidate set (the minimum of w is normalized away).
inline Rational toric_dual_grid(const std::vector<Rational>& c, const std::vector<int>& alpha,
                                const std::vector<Rational>& grid) {
  const std::size_t n = c.size();
  const int m = std::accumulate(alpha.begin(), alpha.end(), 0);
  std::vector<std::size_t> idx(n, 0);
  std::optional<Rational> best;
  for (;;) {
    Rational lam = grid[idx[0]] + c[0], obj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lam = std::min<Rational>(lam, grid[idx[i]] + c[i]);
      obj += alpha[i] * grid[idx[i]];
    }
    obj -= m * lam;
    if (!best || obj < *best) best = obj;
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return *best;
}

/// Volume of the toric dual on degree-m forms in n+1 variables, summing the
/// closed form over all monomials.
inline Rational toric_volume(const std::vector<Rational>& c, int m) {
  const std::size_t n = c.size() - 1;
  Rational total = 0;
  std::vector<int> a(n + 1, 0);
  // enumerate compositions of m into n+1 parts
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      a[n] = left;
      total += toric_dual(c, a);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, m);
  return total;
}

/// Determinant of a rational matrix by Gaussian elimination with row swaps.
inline Rational det(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

/// Sylvester determinant of two binary forms given by coefficient lists
/// f[k] = coefficient of X0^(d-k) X1^k.
inline Rational sylvester(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  const std::size_t d = f.size() - 1, e = g.size() - 1, n = d + e;
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, 0));
  for (std::size_t r = 0; r < e; ++r)
    for (std::size_t k = 0; k <= d; ++k) s[r][r + k] = f[k];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= e; ++k) s[e + r][r + k] = g[k];
  return det(s);
}

/// Resultant normalized so that Res(X0^d, X1^e) = 1.
inline Rational binary_resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  std::vector<Rational> x0(f.size(), 0), x1(g.size(), 0);
  x0.front() = 1;
  x1.back() = 1;
  return sylvester(f, g) / sylvester(x0, x1);
}

/// Tropical determinant min over permutations of sum v(M_{i sigma(i)}).
inline Value tropical_det(const std::vector<std::vector<Value>>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Value best = Value::inf();
  do {
    Value s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i][perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
