#include <benchmark/benchmark.h>

#include <array>

#include "szpiro/io.hpp"
#include "szpiro/minimal.hpp"
#include "szpiro/tate.hpp"
#include "szpiro/verify.hpp"

using namespace szpiro;

namespace {

/* Conductor-11 curve, the smallest possible; one multiplicative prime. */
WeierstrassModel small_curve() { return {0, -1, 1, -10, -20}; }

/* The same curve scaled by u = 1/6: minimization has real work at 2 and 3. */
WeierstrassModel blown_up_curve() {
  return transform_integral(small_curve(), Isomorphism{Rational(1, 6), 2, 1, -3});
}

/* Deep additive behaviour at 2 (type I5* after a five-step loop). */
WeierstrassModel wild_at_2() { return {0, -1, 0, -8, 112}; }

}  // namespace

static void BM_Invariants(benchmark::State& state) {
  WeierstrassModel m = small_curve();
  for (auto _ : state) {
    StandardInvariants inv = m.invariants();
    benchmark::DoNotOptimize(inv.delta);
  }
}
BENCHMARK(BM_Invariants);

static void BM_MinimalModel(benchmark::State& state) {
  WeierstrassModel m = blown_up_curve();
  for (auto _ : state) {
    MinimalModelResult r = minimal_model(m);
    benchmark::DoNotOptimize(r.delta_min);
  }
}
BENCHMARK(BM_MinimalModel);

static void BM_TateLocalMultiplicative(benchmark::State& state) {
  WeierstrassModel m = small_curve();
  Integer p = 11;
  for (auto _ : state) {
    LocalData d = tate_local(m, p);
    benchmark::DoNotOptimize(d.f);
  }
}
BENCHMARK(BM_TateLocalMultiplicative);

static void BM_TateLocalWildPrime(benchmark::State& state) {
  WeierstrassModel m = wild_at_2();
  Integer p = 2;
  for (auto _ : state) {
    LocalData d = tate_local(m, p);
    benchmark::DoNotOptimize(d.f);
  }
}
BENCHMARK(BM_TateLocalWildPrime);

static void BM_Factor(benchmark::State& state) {
  Integer n("600851475143");  // 71 * 839 * 1471 * 6857
  for (auto _ : state) {
    Factorization f = factor(n);
    benchmark::DoNotOptimize(f.cofactor);
  }
}
BENCHMARK(BM_Factor);

static void BM_AnalyzeCurve(benchmark::State& state) {
  WeierstrassModel m = blown_up_curve();
  for (auto _ : state) {
    CurveAnalysis an = analyze_curve(m);
    benchmark::DoNotOptimize(an.conductor);
  }
}
BENCHMARK(BM_AnalyzeCurve);

static void BM_HeightCheck(benchmark::State& state) {
  CurveRecord rec = make_curve_record(small_curve());
  for (auto _ : state) {
    Verdict v = height_bound_check(rec);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_HeightCheck);

static void BM_VerifyFull(benchmark::State& state) {
  WeierstrassModel m = small_curve();
  for (auto _ : state) {
    VerificationReport rep = verify(m);
    benchmark::DoNotOptimize(rep.divisibility_ok);
  }
}
BENCHMARK(BM_VerifyFull);

static void BM_ReportToJson(benchmark::State& state) {
  VerificationReport rep = verify(small_curve());
  for (auto _ : state) {
    std::string line = report_to_json(rep, std::nullopt);
    benchmark::DoNotOptimize(line);
  }
}
BENCHMARK(BM_ReportToJson);

BENCHMARK_MAIN();
