#include <benchmark/benchmark.h>

#include "caidgeo/cone_optim.hpp"
#include "caidgeo/polyhedron.hpp"
#include "caidgeo/rng.hpp"

namespace {

using namespace caidgeo;

Polyhedron cut_simplex(Rng& rng, Index n, int cuts) {
  Polyhedron p = Polyhedron::simplex(n);
  Vec c = Vec::Constant(n, 1.0 / static_cast<double>(n));
  for (int i = 0; i < cuts; ++i) {
    Mat a(1, n);
    a.row(0) = rng.gaussian_vec(n).transpose();
    Vec b(1);
    b[0] = a.row(0).dot(c) + 0.2 * a.row(0).norm();
    p = p.with_inequalities(a, b);
  }
  return p;
}

void bm_project_point(benchmark::State& state) {
  Rng rng(4);
  Index n = state.range(0);
  Polyhedron poly = cut_simplex(rng, n, 2);
  poly.vertices();  // warm the cache
  Vec p = rng.gaussian_vec(n);
  for (auto _ : state) benchmark::DoNotOptimize(poly.project(p).x);
}
BENCHMARK(bm_project_point)->Arg(3)->Arg(6)->Arg(9);

void bm_vertex_enumeration(benchmark::State& state) {
  Rng rng(5);
  Index n = state.range(0);
  for (auto _ : state) {
    state.PauseTiming();
    Polyhedron poly = cut_simplex(rng, n, 2);
    state.ResumeTiming();
    benchmark::DoNotOptimize(poly.vertices().size());
  }
}
BENCHMARK(bm_vertex_enumeration)->Arg(4)->Arg(6)->Arg(8);

void bm_cone_angle(benchmark::State& state) {
  Rng rng(6);
  Index n = state.range(0);
  Mat g(3, n);
  for (Index i = 0; i < 3; ++i) g.row(i) = rng.gaussian_vec(n).transpose();
  ConvexCone cone = ConvexCone::from_halfspaces(g, Mat::Zero(0, n));
  Mat q(n, 1);
  q.col(0) = rng.gaussian_vec(n).normalized();
  Subspace s{q};
  for (auto _ : state) benchmark::DoNotOptimize(angle_cone_subspace(cone, s));
}
BENCHMARK(bm_cone_angle)->Arg(3)->Arg(5)->Arg(8);

void bm_moreau(benchmark::State& state) {
  Rng rng(7);
  Index n = state.range(0);
  Mat g(3, n);
  for (Index i = 0; i < 3; ++i) g.row(i) = rng.gaussian_vec(n).transpose();
  ConvexCone cone = ConvexCone::from_halfspaces(g, Mat::Zero(0, n));
  Vec v = rng.gaussian_vec(n);
  for (auto _ : state) benchmark::DoNotOptimize(moreau_decompose(v, cone).first);
}
BENCHMARK(bm_moreau)->Arg(3)->Arg(6)->Arg(9);

}  // namespace
