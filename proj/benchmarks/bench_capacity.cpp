#include <benchmark/benchmark.h>

#include "caidgeo/capacity.hpp"
#include "caidgeo/corpus.hpp"
#include "caidgeo/quantum.hpp"
#include "caidgeo/rng.hpp"

namespace {

using namespace caidgeo;

void bm_solve_capacity_random(benchmark::State& state) {
  Rng rng(8);
  Index n = state.range(0);
  Mat m(n, n);
  for (Index x = 0; x < n; ++x) m.row(x) = rng.simplex_point(n).transpose();
  Channel ch(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_capacity(ch, Polyhedron::simplex(n)).capacity);
}
BENCHMARK(bm_solve_capacity_random)->Arg(3)->Arg(5)->Arg(8);

void bm_solve_capacity_appendix_b(benchmark::State& state) {
  auto inst = corpus::appendix_b();
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_capacity(inst.channel, inst.lam).capacity);
}
BENCHMARK(bm_solve_capacity_appendix_b);

void bm_bkm_inner(benchmark::State& state) {
  Rng rng(9);
  Index d = state.range(0);
  CMat g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      g(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
  CMat h = 0.5 * (g + g.adjoint().eval());
  CMat s = g * g.adjoint() + CMat::Identity(d, d);
  DensityOperator sigma(s / s.trace().real());
  for (auto _ : state) benchmark::DoNotOptimize(bkm_inner(h, h, sigma));
}
BENCHMARK(bm_bkm_inner)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
