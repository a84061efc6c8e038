#include <benchmark/benchmark.h>

#include "caidgeo/divergence.hpp"
#include "caidgeo/rng.hpp"

namespace {

using namespace caidgeo;

void bm_kl_divergence(benchmark::State& state) {
  Rng rng(1);
  Index m = state.range(0);
  Vec w = rng.simplex_point(m), q = rng.simplex_point(m);
  for (auto _ : state) benchmark::DoNotOptimize(kl_divergence(w, q));
}
BENCHMARK(bm_kl_divergence)->Arg(8)->Arg(64)->Arg(1024);

void bm_chi_alpha(benchmark::State& state) {
  Rng rng(2);
  Index m = state.range(0);
  Vec w = rng.simplex_point(m), q = rng.simplex_point(m);
  for (auto _ : state) benchmark::DoNotOptimize(chi_alpha(w, q, 3.0));
}
BENCHMARK(bm_chi_alpha)->Arg(8)->Arg(64)->Arg(1024);

void bm_mutual_information(benchmark::State& state) {
  Rng rng(3);
  Index n = state.range(0);
  Mat m(n, n);
  for (Index x = 0; x < n; ++x) m.row(x) = rng.simplex_point(n).transpose();
  Channel ch(m);
  Distribution p(rng.simplex_point(n));
  for (auto _ : state) benchmark::DoNotOptimize(mutual_information(p, ch));
}
BENCHMARK(bm_mutual_information)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
