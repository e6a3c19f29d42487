#include <benchmark/benchmark.h>

#include "line_act/dynamics.hpp"
#include "line_act/gallery.hpp"

using namespace lineact;

namespace {

Action ladder_action() {
  GalleryParams gp;
  gp.k = 2;
  return gallery("ex_1_4", gp);
}

void BM_EvalLadderWord(benchmark::State& state) {
  const Action act = ladder_action();
  const HomeoExpr h = realize(act, parse_word(act.presentation(), "b^-3 a b^3 a^-1"));
  const RealNum x = RealNum::rational(3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(eval(h, x));
}
BENCHMARK(BM_EvalLadderWord);

void BM_EvalTolerance(benchmark::State& state) {
  const Action act = ladder_action();
  const HomeoExpr h = realize(act, parse_word(act.presentation(), "a^2 b a^-1"));
  const RealNum tol = RealNum::parse("1e-60");
  for (auto _ : state) benchmark::DoNotOptimize(eval(h, RealNum::rational(1, 3), tol));
}
BENCHMARK(BM_EvalTolerance);

void BM_Ball(benchmark::State& state) {
  const Presentation p = Presentation::free(2);
  for (auto _ : state) benchmark::DoNotOptimize(ball(p, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Ball)->Arg(4)->Arg(6)->Arg(8);

void BM_Orbit(benchmark::State& state) {
  const Action act = gallery("ex_1_2");
  for (auto _ : state) benchmark::DoNotOptimize(orbit(act, RealNum(0), static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Orbit)->Arg(10)->Arg(30);

void BM_WanderingCertificate(benchmark::State& state) {
  const Action act = gallery("klein_bottle");
  const Interval j = Interval::open(RealNum::rational(1, 5), RealNum::rational(3, 10));
  for (auto _ : state) benchmark::DoNotOptimize(wandering_certificate(act, j, 6));
}
BENCHMARK(BM_WanderingCertificate)->Unit(benchmark::kMillisecond);

void BM_CheckRelations(benchmark::State& state) {
  const Action act = ladder_action();
  const RealNum tol = RealNum::parse("1e-20");
  const SampleSpec samples{Interval::closed(RealNum(-5), RealNum(5)), 100};
  for (auto _ : state) benchmark::DoNotOptimize(check_relations(act, samples, tol));
}
BENCHMARK(BM_CheckRelations)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
