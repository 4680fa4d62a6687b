#include <benchmark/benchmark.h>

#include <random>

#include "valvol/chow.hpp"
#include "valvol/divisor.hpp"
#include "valvol/harness.hpp"
#include "valvol/subval.hpp"
#include "valvol/valspace.hpp"

using namespace valvol;

namespace {

MinFormsVal random_forms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-4, 4), texp(-2, 2);
  std::vector<Vec> forms;
  std::vector<Value> shifts;
  for (std::size_t k = 0; k < n + 2; ++k) {
    Vec f(n);
    for (auto& e : f) e = FieldElem(Rational(coef(rng))) * FieldElem::t_pow(Rational(texp(rng)));
    f[k % n] += FieldElem(1);
    forms.push_back(f);
    shifts.push_back(Value(Rational(coef(rng), 2)));
  }
  return MinFormsVal(n, forms, shifts);
}

}  // namespace

static void BM_Orthogonalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  MinFormsVal u = random_forms(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonalize(u));
}
BENCHMARK(BM_Orthogonalize)->Arg(2)->Arg(4)->Arg(8);

static void BM_GradedPieceP2(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Divisor eta(Variety::projective(2), {{HPoly::variable(3, 0), Value(-1)},
                                       {HPoly::variable(3, 1), Value(0)},
                                       {HPoly::variable(3, 2), Value(0)},
                                       {HPoly::variable(3, 0) + HPoly::variable(3, 1), Value(Rational(-1, 2))}});
  for (auto _ : state) {
    SubvalEngine u(eta.dual_conditions(), TruncationBudget{});
    benchmark::DoNotOptimize(u.graded_piece(m));
  }
}
BENCHMARK(BM_GradedPieceP2)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_GeneratedValue(benchmark::State& state) {
  SubvalEngine u(ConditionSet::coordinate({Value(-1), Value(Rational(1, 2)), Value(0)}), TruncationBudget{});
  const HPoly g = (HPoly::variable(3, 0) + HPoly::variable(3, 1)).pow(2);
  u.generated(g);  // warm the cache
  for (auto _ : state) benchmark::DoNotOptimize(u.generated(g));
}
BENCHMARK(BM_GeneratedValue)->Unit(benchmark::kMillisecond);

static void BM_PnVolume(benchmark::State& state) {
  Divisor eta(Variety::projective(1), {{HPoly::variable(2, 0), Value(-1)},
                                       {HPoly::variable(2, 1), Value(0)},
                                       {HPoly::variable(2, 0) + HPoly::variable(2, 1), Value(Rational(-1, 3))}});
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pn_volume(eta, m));
}
BENCHMARK(BM_PnVolume)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Resultant(benchmark::State& state) {
  const std::size_t nv = static_cast<std::size_t>(state.range(0));
  std::vector<HPoly> F;
  for (std::size_t i = 0; i < nv; ++i) {
    HPoly f = HPoly::variable(nv, i).pow(2);
    for (std::size_t j = 0; j < nv; ++j)
      if (j != i) f = f + (HPoly::variable(nv, i) * HPoly::variable(nv, j)).scaled(FieldElem(Rational(long(i + 2 * j + 1))));
    F.push_back(f);
  }
  for (auto _ : state) benchmark::DoNotOptimize(resultant(F));
}
BENCHMARK(BM_Resultant)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_IntersectionP2(benchmark::State& state) {
  Divisor eta = Divisor::toric({Value(-1), Value(Rational(-1, 2)), Value(0)});
  for (auto _ : state) benchmark::DoNotOptimize(intersection_number(eta, Variety::projective(2), 1));
}
BENCHMARK(BM_IntersectionP2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
