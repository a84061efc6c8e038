#include <doctest.h>

#include <cmath>

#include "caidgeo/certify.hpp"
#include "corpus_helpers.hpp"

using namespace caidgeo;
using namespace caidgeo::testing;

TEST_CASE("neighborhood sampling determinism and certificates") {
  auto inst = corpus::appendix_b();
  auto pipe = build_pipeline(inst.channel, inst.lam);
  auto a = sample_neighborhood(pipe, 0.3, 200, 7);
  auto b = sample_neighborhood(pipe, 0.3, 200, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].point - b[i].point).norm() == 0.0);
    CHECK(a[i].distance == b[i].distance);
  }
  CHECK(sample_neighborhood(pipe, 0.3, 0, 7).empty());
  for (const auto& s : a) {
    CHECK(s.distance <= 0.3 + 1e-12);
    CHECK(pipe.sol.lam.contains(s.point, 1e-8));
    // The base is the recomputed projection by construction; check residual.
    QpResult pr = pipe.sol.caid.project(s.point);
    CHECK((pr.x - s.base).norm() < 1e-8);
  }
}

TEST_CASE("theorem 1 certification on appendix B") {
  auto inst = corpus::appendix_b();
  auto pipe = build_pipeline(inst.channel, inst.lam);
  auto t1 = theorem1_constants(pipe.sol, pipe.dlp);
  auto samples = sample_neighborhood(pipe, t1.delta, 2000, 11);
  auto cert = certify_theorem1(pipe, t1, samples);
  CHECK(cert.samples > 0);
  CHECK(cert.violations == 0);
  CHECK(cert.worst_margin >= -tol::kCertSlack);

  // Negative control: inflating gamma far beyond the true curvature must
  // produce detectable violations. On this channel gamma is about 14x below
  // the exact coefficient, so the inflation must exceed that headroom.
  auto corrupted = t1;
  corrupted.gamma *= 100.0;
  auto bad = certify_theorem1(pipe, corrupted, samples);
  CHECK(bad.violations > 0);
}

TEST_CASE("negative control at 10x on a tight instance") {
  // Identity channel: theorem-1 gamma equals the exact quadratic
  // coefficient, so a 10x inflation is detected immediately.
  auto pipe = build_pipeline(identity_channel(2), Polyhedron::simplex(2));
  auto t1 = theorem1_constants(pipe.sol, pipe.dlp);
  auto samples = sample_neighborhood(pipe, t1.delta, 400, 3);
  CHECK(certify_theorem1(pipe, t1, samples).violations == 0);
  auto corrupted = t1;
  corrupted.gamma *= 10.0;
  CHECK(certify_theorem1(pipe, corrupted, samples).violations > 0);
}

TEST_CASE("theorem 2 quadratic certification on appendix B") {
  auto inst = corpus::appendix_b();
  auto pipe = build_pipeline(inst.channel, inst.lam);
  auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
  REQUIRE(t2.gamma1 == 0.0);
  auto samples = sample_neighborhood(pipe, *t2.delta, 2000, 13);
  auto cert = certify_theorem2(pipe, t2, samples);
  CHECK(cert.samples > 0);
  CHECK(cert.violations == 0);
}

TEST_CASE("theorem 2 linear certification on a facet-pinned instance") {
  Channel w = bsc(0.1);
  Mat a(1, 2);
  a << 1, 0;
  Vec b(1);
  b << 0.3;
  Polyhedron lam = Polyhedron::simplex(2).with_inequalities(a, b);
  auto pipe = build_pipeline(w, lam);
  auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
  REQUIRE(t2.gamma1 > 0.0);
  auto samples = sample_neighborhood(pipe, 1.0, 500, 17);
  auto cert = certify_theorem2(pipe, t2, samples);
  CHECK(cert.violations == 0);
}

TEST_CASE("converse curves hold pointwise") {
  std::vector<double> taus;
  for (int i = 0; i <= 10; ++i) taus.push_back(i / 10.0);

  // Quadratic branch on appendix B.
  {
    auto inst = corpus::appendix_b();
    auto pipe = build_pipeline(inst.channel, inst.lam);
    auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
    auto curve = converse_curve(pipe, t2, /*quadratic=*/true, taus);
    CHECK(curve.violations == 0);
    CHECK(curve.info[0] == doctest::Approx(pipe.sol.capacity).epsilon(1e-10));
  }
  // Identity channel over the simplex: gamma1 = 0 branch as well.
  {
    auto pipe = build_pipeline(identity_channel(2), Polyhedron::simplex(2));
    auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
    REQUIRE(t2.gamma1 == 0.0);
    auto curve = converse_curve(pipe, t2, true, taus);
    CHECK(curve.violations == 0);
  }
  // Linear branch.
  {
    Channel w = bsc(0.1);
    Mat a(1, 2);
    a << 1, 0;
    Vec b(1);
    b << 0.3;
    auto pipe = build_pipeline(w, Polyhedron::simplex(2).with_inequalities(a, b));
    auto t2 = theorem2_constants(pipe.sol, pipe.dlp, pipe.sigma, pipe.a);
    REQUIRE(t2.gamma1 > 0.0);
    auto curve = converse_curve(pipe, t2, false, taus);
    CHECK(curve.violations == 0);
  }
}

TEST_CASE("example 1: fourth-power decay and vanishing quadratic fits") {
  auto rep = example1_fourth_power();
  CHECK(rep.ratio_limit == doctest::Approx(8.0).epsilon(0.01));
  CHECK(rep.fitted_exponent == doctest::Approx(4.0).epsilon(0.005));
  CHECK(rep.max_distance_residual < 1e-9);
  // Quadratic coefficients fitted on shrinking boundary points decay.
  for (std::size_t i = 1; i < rep.quad_coeffs.size(); ++i)
    CHECK(rep.quad_coeffs[i] < rep.quad_coeffs[i - 1]);
  // Polygon surrogates keep a positive gamma that vanishes with refinement.
  for (std::size_t i = 0; i < rep.polygon_gamma.size(); ++i) {
    CHECK(rep.polygon_gamma[i] > 0.0);
    if (i > 0) CHECK(rep.polygon_gamma[i] < rep.polygon_gamma[i - 1]);
  }
}

TEST_CASE("example 1 parametric identities") {
  for (double tau : {0.3, 0.7, 1.4}) {
    Vec q = corpus::example1_qtau(tau);
    double s2 = std::pow(std::sin(tau / 2.0), 2.0);
    CHECK(q[0] == doctest::Approx(0.5 + s2 / 3.0).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.5 - s2 / 3.0).epsilon(1e-12));
    // p_tau sums to one and induces q.
    Vec p = corpus::example1_ptau(tau);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-14));
    Mat w(3, 2);
    w << 1, 0, 0, 1, 0, 1;
    CHECK(((w.transpose() * p) - q).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("example 2: capacity, unit distances, vanishing segment bound") {
  auto rep = example2_truncation(10);
  CHECK(rep.capacity == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(rep.caid_is_p1);
  for (double d : rep.distances) CHECK(d == doctest::Approx(1.0).epsilon(2e-8));
  CHECK(rep.info_increasing);
  // The segment bound at fixed tau shrinks as the truncation grows.
  auto rep_small = example2_truncation(4);
  for (std::size_t i = 0; i < rep.segment_bounds.size(); ++i)
    CHECK(rep.segment_bounds[i] < rep_small.segment_bounds[i] + 1e-12);
  CHECK_THROWS_AS(example2_truncation(1), std::invalid_argument);
}

TEST_CASE("example 3: diverging fisher diagonal at modest truncations") {
  auto rep = example3_zeta(16, {50, 200, 800});
  CHECK(rep.sigma00.size() == 3);
  CHECK(rep.sigma00[0] < rep.sigma00[1]);
  CHECK(rep.sigma00[1] < rep.sigma00[2]);
  for (double s : rep.sigma01) CHECK(std::abs(s) < 1e-9);
  CHECK(rep.a_lower_bound_only);
  CHECK(rep.capacity ==
        doctest::Approx(rep.capacity_expected).epsilon(1e-4));
  CHECK(rep.tail_divergence <= rep.capacity + 1e-6);
  CHECK(rep.tail_divergence ==
        doctest::Approx(rep.tail_divergence_series).epsilon(0.02));
  CHECK_THROWS_AS(example3_zeta(4, {50}), std::invalid_argument);
}

TEST_CASE("appendix B counterexample report") {
  auto rep = appendix_b_counterexample();
  CHECK(rep.epsilon * std::pow(5.0, -rep.epsilon) ==
        doctest::Approx(std::sqrt(3.0) * std::cbrt(2.0) / 10.0).epsilon(1e-12));
  CHECK(rep.capacity ==
        doctest::Approx((1.0 - rep.epsilon) * std::log(5.0)).epsilon(1e-9));
  CHECK(std::abs(rep.grad_dot_u) < 1e-9);
  CHECK(rep.v0_norm > 0.1);
  CHECK(std::abs(rep.v0_dot_grad) < 1e-9);
  CHECK(rep.refutes_linear_kernel_bound);
}

TEST_CASE("divergence sandwich suite") {
  auto cert = divergence_sandwich_suite(5000, 123);
  CHECK(cert.samples == 5000);
  CHECK(cert.violations == 0);
}
