#pragma once

// Volume tables vol_{B_m} eta*_m / (m dim K[W]_m) against the intersection
// side -eta^(l+1) C_W / (l+1), on P^n and on hypersurfaces.

#include <cstddef>
#include <string>
#include <vector>

#include "valvol/chow.hpp"
#include "valvol/config.hpp"
#include "valvol/divisor.hpp"

namespace valvol {

struct VolumeOptions {
  TruncationBudget budget{};
  SamplingPlan sampling{};
};

/// vol_lo <= vol <= vol_hi; hi = INF when no upper bound is available.
struct VolumeResult {
  Value lo;
  Value hi;
  bool exact = false;
};

/// Largest m handled for the variety (P^1: 24, P^2: 12, P^3: 6,
/// hypersurfaces in P^2: 10, in P^3: 5).
int degree_cap(const Variety& W);

/// Volume of eta*_m on K[X]_m with respect to the monomial basis. Toric
/// divisors: exact sum of closed-form duals (after normalizing sup eta = 0).
/// Otherwise the interval between the generated graded piece and the
/// orthogonalized sampled evaluation forms.
VolumeResult pn_volume(const Divisor& eta, int m, const VolumeOptions& opt = {});

struct HypersurfaceBasis {
  /// Degree-m monomials not divisible by the leading monomial of g.
  std::vector<Exponent> monomials;
  /// g divided by its deglex leading coefficient.
  HPoly g_monic;
  /// det of [g * M_(m-D) | B_m] in monomial coordinates; +-1.
  FieldElem certificate;
};

/// Throws DomainError when m < deg g.
HypersurfaceBasis hypersurface_basis(const HPoly& g, int m);

/// vol_{M_m} theta* - vol_{g M_(m-D)} theta* for theta on the ambient P^n: a
/// lower bound for vol_{B_m} of the dual of theta restricted to V(g). Exact
/// (lo = hi) for toric theta and a coordinate hyperplane.
VolumeResult hypersurface_volume(const Divisor& theta, const HPoly& g, int m, const VolumeOptions& opt = {});

struct TableRow {
  int m = 0;
  std::size_t dim = 0;
  Value vol_lo, vol_hi, lhs_lo, lhs_hi, rhs, slack_lo;
  /// "exact", "interval", "lower" or "error".
  std::string kind;
  std::string diagnostic;
  bool pass = false;
};

struct MainReport {
  std::vector<TableRow> rows;
  IntersectionResult intersection;
  Value rhs;
  bool violation = false;  // some row has slack below -tolerance
  bool failure = false;    // some row could not be computed
};

/// Rows are computed in parallel (VALVOL_THREADS caps the thread count) and
/// returned in the order of cfg.m_range.
MainReport verify_main(const ExperimentConfig& cfg);

std::string table_csv(const MainReport& r);
std::string table_json(const MainReport& r);

/// Worker count: VALVOL_THREADS if set and positive, else the hardware count.
unsigned thread_count();

/// Runs fn(i) for i < count on up to thread_count() threads.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn);

/// CSV field quoting per RFC 4180.
std::string csv_field(const std::string& s);

}  // namespace valvol

#include <atomic>
#include <thread>

namespace valvol {

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace valvol
