#include <benchmark/benchmark.h>

#include "matord/duality.hpp"
#include "matord/positivisation.hpp"
#include "matord/regularity.hpp"

using namespace matord;

namespace {

BaseSpace base_for(int model, double p) {
  return model == 0 ? BaseSpace::lattice(2, p) : BaseSpace::schatten(2, p);
}

double p_of(int64_t code) { return code == 0 ? kInf : static_cast<double>(code); }

}  // namespace

static void BM_MinEigenvalue(benchmark::State& state) {
  Rng rng(1);
  Mat H = random_hermitian(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(min_eigenvalue(H));
}
BENCHMARK(BM_MinEigenvalue)->Arg(4)->Arg(16)->Arg(64);

static void BM_LevelNorm(benchmark::State& state) {
  const Kind kind = static_cast<Kind>(state.range(0));
  const int model = kind == Kind::Schatten ? 1 : 0;
  MatricialStructure S(base_for(model, p_of(state.range(1))), kind);
  Rng rng(2);
  LeveledElement x = random_element(S.base(), static_cast<int>(state.range(2)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(level_norm(S, x));
}
BENCHMARK(BM_LevelNorm)
    ->ArgsProduct({{static_cast<int>(Kind::Min)}, {0, 1, 2}, {2, 4}})
    ->ArgsProduct({{static_cast<int>(Kind::Max)}, {1}, {2}})
    ->ArgsProduct({{static_cast<int>(Kind::Schatten)}, {0, 1, 2}, {2}})
    ->Unit(benchmark::kMillisecond);

static void BM_ConeMember(benchmark::State& state) {
  const Kind kind = static_cast<Kind>(state.range(0));
  MatricialStructure S(BaseSpace::schatten(2, 2.0), kind);
  LeveledElement F = flip_element(2);
  for (auto _ : state) benchmark::DoNotOptimize(cone_member(S, F, 1e-9));
}
BENCHMARK(BM_ConeMember)
    ->Arg(static_cast<int>(Kind::Min))
    ->Arg(static_cast<int>(Kind::Max))
    ->Arg(static_cast<int>(Kind::Schatten))
    ->Unit(benchmark::kMillisecond);

static void BM_GenerationWitness(benchmark::State& state) {
  MatricialStructure S(BaseSpace::schatten(2, p_of(state.range(0))), Kind::Schatten);
  Rng rng(3);
  LeveledElement x = random_element(S.base(), 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(generation_witness(S, x));
}
BENCHMARK(BM_GenerationWitness)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_NormalityProbe(benchmark::State& state) {
  MatricialStructure S(BaseSpace::lattice(3, p_of(state.range(0))), Kind::Min);
  for (auto _ : state) benchmark::DoNotOptimize(normality_probe(S, 2, 100, 4));
}
BENCHMARK(BM_NormalityProbe)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_AlphaPlus(benchmark::State& state) {
  MatricialStructure S(BaseSpace::schatten(2, kInf), Kind::MatrixSystem);
  Rng rng(5);
  LeveledElement x = random_element(S.base(), 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_plus(S, x, 16, 6));
}
BENCHMARK(BM_AlphaPlus)->Unit(benchmark::kMillisecond);

static void BM_DualConeMember(benchmark::State& state) {
  MatricialStructure S(BaseSpace::lattice(3, 1.0), state.range(0) ? Kind::Max : Kind::Min);
  Rng rng(7);
  LeveledElement y = random_hermitian_element(dual(S.base()), 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dual_cone_member(S, y));
}
BENCHMARK(BM_DualConeMember)->Arg(0)->Arg(1);
BENCHMARK_MAIN();
