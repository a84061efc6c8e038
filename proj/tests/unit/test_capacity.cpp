#include <doctest.h>

#include <cmath>

#include "caidgeo/capacity.hpp"
#include "caidgeo/corpus.hpp"
#include "corpus_helpers.hpp"

using namespace caidgeo;
using namespace caidgeo::testing;

TEST_CASE("channel kernels") {
  CHECK(channel_kernel(identity_channel(2)).dim() == 0);
  Mat dup(3, 2);
  dup << 0.3, 0.7, 0.3, 0.7, 0.9, 0.1;
  Subspace k = channel_kernel(Channel(dup));
  CHECK(k.dim() == 1);
  Vec d(3);
  d << 1, -1, 0;
  CHECK(k.contains(d.normalized(), 1e-9));
}

TEST_CASE("gradient kernel") {
  Vec ones = Vec::Ones(4);
  Subspace k = gradient_kernel(2.0 * ones);
  CHECK(k.dim() == 3);
  Vec z(4);
  z << 1, -0.5, -0.5, 0;
  CHECK(k.contains(z.normalized(), 1e-9));
  CHECK(gradient_kernel(Vec::Unit(3, 0)).dim() == 2);
  CHECK(gradient_kernel(Vec::Zero(3)).dim() == 3);
}

TEST_CASE("support set") {
  Channel w = random_channel_fixture();
  Polyhedron simplex = Polyhedron::simplex(3);
  CHECK(support_set(w, simplex) == std::vector<int>{0, 1, 2});
  Mat e(1, 3);
  e << 1, 0, 0;
  Polyhedron cut = simplex.with_equalities(e, Vec::Zero(1));
  CHECK(support_set(w, cut) == std::vector<int>{1, 2});
}

TEST_CASE("identity channel capacity") {
  auto sol = solve_capacity(identity_channel(2), Polyhedron::simplex(2));
  CHECK(sol.capacity == doctest::Approx(std::log(2)).epsilon(1e-12));
  CHECK(sol.duality_gap <= 1e-10);
  CHECK((sol.center - Vec::Constant(2, 0.5)).lpNorm<1>() < 1e-9);
  CHECK(sol.caid_exact);
  REQUIRE(sol.caid.vertices().size() == 1);
  CHECK((sol.caid.vertices()[0] - Vec::Constant(2, 0.5)).norm() < 1e-9);
  CHECK(sol.tangent_affine.dim() == 0);
}

TEST_CASE("capacity matches brute force on 2-input channels") {
  Rng rng(101);
  for (int t = 0; t < 8; ++t) {
    Channel w = random_channel(rng, 2, 2 + static_cast<Index>(rng.below(5)));
    auto sol = solve_capacity(w, Polyhedron::simplex(2));
    ClassicalChannelModel model(w);
    double best = 0;
    for (int k = 0; k <= 10000; ++k) {
      Vec p(2);
      p << k / 10000.0, 1.0 - k / 10000.0;
      best = std::max(best, model.info(p));
    }
    CHECK(std::abs(sol.capacity - best) < 1e-6);
  }
}

TEST_CASE("duality gap certificate on random channels over the simplex") {
  Rng rng(55);
  for (int t = 0; t < 6; ++t) {
    Index n = 2 + static_cast<Index>(rng.below(5));
    Index m = 2 + static_cast<Index>(rng.below(5));
    Channel w = random_channel(rng, n, m);
    auto sol = solve_capacity(w, Polyhedron::simplex(n));
    CHECK(sol.duality_gap <= 1e-10);
    CHECK(sol.saddle_margin <= 1e-8);
  }
}

TEST_CASE("monotonicity under nested constraint sets") {
  Rng rng(77);
  for (int t = 0; t < 6; ++t) {
    Index n = 3 + static_cast<Index>(rng.below(3));
    Channel w = random_channel(rng, n, 4);
    Polyhedron lam = random_constraint_set(rng, n, 1);
    Polyhedron smaller = random_constraint_set_inside(rng, lam);
    if (smaller.vertices().empty()) continue;
    double c_big = solve_capacity(w, lam).capacity;
    double c_small = solve_capacity(w, smaller).capacity;
    CHECK(c_small <= c_big + 1e-9);
  }
}

TEST_CASE("example 1 channel with polygon surrogate constraint") {
  auto inst = corpus::example1(24);
  auto sol = solve_capacity(inst.channel, inst.lam);
  CHECK(sol.capacity == doctest::Approx(std::log(2)).epsilon(1e-9));
  Vec pbar(3);
  pbar << 0.5, 0.25, 0.25;
  CHECK((sol.maximizer - pbar).norm() < 1e-7);
  CHECK((sol.center - Vec::Constant(2, 0.5)).lpNorm<1>() < 1e-8);
  REQUIRE(sol.caid.vertices().size() == 1);
  CHECK((sol.caid.vertices()[0] - pbar).norm() < 1e-7);
}

TEST_CASE("appendix B channel") {
  auto inst = corpus::appendix_b();
  const double eps = corpus::appendix_b_epsilon();
  // The defining root: eps * 5^{-eps} = sqrt(3) * cbrt(2) / 10.
  CHECK(eps * std::pow(5.0, -eps) ==
        doctest::Approx(std::sqrt(3.0) * std::cbrt(2.0) / 10.0).epsilon(1e-12));
  CHECK(eps == doctest::Approx(0.45).epsilon(2e-2));

  auto sol = solve_capacity(inst.channel, inst.lam);
  double expected_c = (1.0 - eps) * std::log(5.0);
  CHECK(sol.capacity == doctest::Approx(expected_c).epsilon(1e-9));
  // Every input letter attains the capacity divergence.
  for (Index x = 0; x < 9; ++x)
    CHECK(sol.gradient[x] == doctest::Approx(expected_c).epsilon(1e-8));
  // Unique CAID: uniform over the first five letters.
  REQUIRE(sol.caid.vertices().size() == 1);
  Vec pbar = Vec::Zero(9);
  pbar.head(5).setConstant(0.2);
  CHECK((sol.caid.vertices()[0] - pbar).norm() < 1e-7);
  // ker(W) is the line spanned by U = [0,0,0,0,0,2,2,-1,-3].
  REQUIRE(sol.ker_channel.dim() == 1);
  Vec u(9);
  u << 0, 0, 0, 0, 0, 2, 2, -1, -3;
  CHECK(sol.ker_channel.contains(u.normalized(), 1e-9));
  CHECK(std::abs(u.dot(sol.gradient)) < 1e-9);
  // T(A) = span{U}: U is orthogonal to the constant gradient.
  CHECK(sol.tangent_affine.dim() == 1);
  CHECK(sol.tangent_affine.contains(u.normalized(), 1e-8));
}

TEST_CASE("affine system rank plus tangent dimension equals the support size") {
  Rng rng(91);
  for (int t = 0; t < 8; ++t) {
    Index n = 2 + static_cast<Index>(rng.below(5));
    Channel w = random_channel(rng, n, 2 + static_cast<Index>(rng.below(4)));
    auto sol = solve_capacity(w, Polyhedron::simplex(n));
    Index support_n = static_cast<Index>(sol.support.size());
    CHECK(sol.affine.E.rows() + sol.tangent_affine.dim() == support_n);
    // The maximizer satisfies the reduced equality system.
    CHECK(sol.affine.contains(sol.maximizer, 1e-7));
  }
}

TEST_CASE("points of the caid polytope achieve capacity") {
  Rng rng(31);
  for (int t = 0; t < 5; ++t) {
    Index n = 3 + static_cast<Index>(rng.below(3));
    Channel w = random_channel(rng, n, 3);
    auto sol = solve_capacity(w, Polyhedron::simplex(n));
    if (!sol.caid_exact) continue;
    ClassicalChannelModel model(sol.channel);
    const auto& verts = sol.caid.vertices();
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b2 = a; b2 < verts.size(); ++b2)
        for (double t2 : {0.0, 0.3, 0.8}) {
          Vec p = (1 - t2) * verts[a] + t2 * verts[b2];
          CHECK(std::abs(model.info(p) - sol.capacity) < 1e-8);
          Vec q = sol.channel.matrix().transpose() * p;
          CHECK((q - sol.center).lpNorm<1>() < 1e-8);
        }
  }
}
