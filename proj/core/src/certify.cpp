#include "caidgeo/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "caidgeo/cone_optim.hpp"
#include "caidgeo/divergence.hpp"
#include "caidgeo/rng.hpp"

namespace caidgeo {

Pipeline build_pipeline(const Channel& w, const Polyhedron& lam, double tol) {
  Pipeline p;
  p.sol = solve_capacity(w, lam, tol);
  p.dlp = pushover_union(p.sol.lam, p.sol.caid);
  p.sigma = fisher_matrix(p.sol.channel, p.sol.center);
  p.a = a_coefficient(p.sol.channel, p.sol.center);
  return p;
}

namespace {

void record_margin(Certificate& cert, double margin, double slack) {
  ++cert.samples;
  cert.worst_margin = std::min(cert.worst_margin, margin);
  if (margin < -slack) {
    ++cert.violations;
    if (margin > -tol::kWarnSlack) ++cert.warnings;
  }
}

}  // namespace

std::vector<NeighborhoodSample> sample_neighborhood(const Pipeline& pipe,
                                                    double delta, int count,
                                                    std::uint64_t seed) {
  return sample_neighborhood(pipe.sol, pipe.dlp, delta, count, seed);
}

std::vector<NeighborhoodSample> sample_neighborhood(const CapacitySolution& sol,
                                                    const UnionOfCones& dlp,
                                                    double delta, int count,
                                                    std::uint64_t seed) {
  if (!(delta > 0.0))
    throw std::invalid_argument("sample_neighborhood: delta must be positive");
  const Index n = sol.lam.ambient();
  Rng rng(seed);
  std::vector<NeighborhoodSample> out;
  if (count <= 0) return out;

  // Member cones keyed by the active signature of the projection, for the
  // projection-direction certificate.
  std::map<std::vector<int>, ConvexCone> direction_cache;
  auto certify = [&](const Vec& p, const Vec& base) {
    auto sig = sol.caid.active_constraints(base, 1e-7);
    auto it = direction_cache.find(sig);
    if (it == direction_cache.end())
      it = direction_cache.emplace(sig, pushover_cone(sol.lam, sol.caid, base))
               .first;
    if (!it->second.contains(p - base, 1e-6))
      throw numerical_error(
          "sample_neighborhood: projection direction outside its cone");
  };

  auto try_accept = [&](const Vec& p) {
    if (!sol.lam.contains(p, 1e-9)) return;
    QpResult pr = sol.caid.project(p);
    double dist = (p - pr.x).norm();
    if (dist > delta) return;
    certify(p, pr.x);
    out.push_back({p, pr.x, dist});
  };

  // Ray constructions from the face base points along random conic
  // combinations over member generators; these land inside the neighborhood
  // by construction.
  Mat null_eq = Subspace::null_of_rows(sol.lam.E()).basis();
  std::vector<std::pair<Vec, Mat>> ray_pool;  // (base, generator columns)
  for (const auto& m : dlp.members) {
    Index g = m.cone.rays().cols() + 2 * m.cone.lineality().cols();
    if (g == 0) continue;
    Mat gens(n, g);
    Index c = 0;
    for (Index i = 0; i < m.cone.rays().cols(); ++i) gens.col(c++) = m.cone.rays().col(i);
    for (Index i = 0; i < m.cone.lineality().cols(); ++i) {
      gens.col(c++) = m.cone.lineality().col(i);
      gens.col(c++) = -m.cone.lineality().col(i);
    }
    ray_pool.emplace_back(m.base, std::move(gens));
  }
  auto draw_ray_sample = [&]() {
    const auto& [base, gens] = ray_pool[rng.below(ray_pool.size())];
    Vec dir = Vec::Zero(n);
    bool any = false;
    for (Index i = 0; i < gens.cols(); ++i)
      if (rng.uniform() < 0.5) {
        dir += rng.uniform() * gens.col(i);
        any = true;
      }
    if (!any) dir = gens.col(static_cast<Index>(rng.below(gens.cols())));
    if (dir.norm() < 1e-12) return;
    dir.normalize();
    double tmax = kInf;
    for (Index i = 0; i < sol.lam.A().rows(); ++i) {
      double ad = sol.lam.A().row(i).dot(dir);
      if (ad > 1e-12)
        tmax = std::min(tmax, (sol.lam.b()[i] - sol.lam.A().row(i).dot(base)) / ad);
    }
    if (!(tmax > 0.0) || !std::isfinite(tmax)) return;
    double t = rng.uniform() * std::min(tmax, delta);
    try_accept(base + t * dir);
  };

  int ray_target = ray_pool.empty() ? 0 : count / 2;
  for (int k = 0; static_cast<int>(out.size()) < ray_target && k < 40 * count; ++k)
    draw_ray_sample();

  // Hit-and-run over lam, filtered by the distance cap. If the neighborhood
  // is too small for the walk to hit, the remainder comes from the ray
  // constructions above.
  Vec x = sol.lam.feasible_point();
  int burn = 10;
  long budget = 60L * count + 2000;
  for (long k = 0; static_cast<int>(out.size()) < count && k < budget; ++k) {
    Vec d = rng.gaussian_vec(n);
    if (null_eq.cols() > 0)
      d = null_eq * (null_eq.transpose() * d);
    else
      d.setZero();
    if (d.norm() < 1e-12) continue;
    d.normalize();
    double lo = -kInf, hi = kInf;
    for (Index i = 0; i < sol.lam.A().rows(); ++i) {
      double ad = sol.lam.A().row(i).dot(d);
      double room = sol.lam.b()[i] - sol.lam.A().row(i).dot(x);
      if (ad > 1e-12) hi = std::min(hi, room / ad);
      if (ad < -1e-12) lo = std::max(lo, room / ad);
    }
    if (!(hi > lo)) continue;
    x = x + rng.uniform(lo, hi) * d;
    if (k < burn) continue;
    try_accept(x);
  }
  for (long k = 0; static_cast<int>(out.size()) < count && !ray_pool.empty() &&
                   k < 200L * count;
       ++k)
    draw_ray_sample();
  if (out.empty())
    throw solver_error(
        "sample_neighborhood: empty neighborhood at this delta");
  return out;
}

Certificate certify_theorem1(const InfoFn& info, double capacity,
                             const Theorem1Constants& t1,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack) {
  Certificate cert;
  cert.theorem = "theorem-1";
  cert.constants = {{"beta", t1.beta},
                    {"gamma", t1.gamma},
                    {"delta", t1.delta},
                    {"capacity", capacity}};
  for (const auto& s : samples) {
    if (s.distance > t1.delta + 1e-15) continue;
    double bound = capacity - t1.gamma * s.distance * s.distance;
    record_margin(cert, bound - info(s.point), slack);
  }
  return cert;
}

Certificate certify_theorem1(const Pipeline& pipe, const Theorem1Constants& t1,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack) {
  ClassicalChannelModel model(pipe.sol.channel);
  return certify_theorem1([&](const Vec& p) { return model.info(p); },
                          pipe.sol.capacity, t1, samples, slack);
}

Certificate certify_theorem2(const InfoFn& info, const CapacitySolution& geo,
                             const Theorem2Constants& t2,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack) {
  Certificate cert;
  if (t2.gamma1 > 0.0) {
    cert.theorem = "theorem-2-linear";
    cert.constants = {{"gamma1", t2.gamma1}, {"capacity", geo.capacity}};
    for (const auto& s : samples) {
      double bound = geo.capacity - t2.gamma1 * s.distance;
      record_margin(cert, bound - info(s.point), slack);
    }
    for (const auto& v : geo.lam.vertices()) {
      QpResult pr = geo.caid.project(v);
      double bound = geo.capacity - t2.gamma1 * (v - pr.x).norm();
      record_margin(cert, bound - info(v), slack);
    }
    return cert;
  }
  cert.theorem = "theorem-2-quadratic";
  if (!t2.gamma2 || !t2.delta)
    throw std::invalid_argument(
        "certify_theorem2: quadratic constants unavailable (infinite third "
        "moment?)");
  cert.constants = {{"gamma2", *t2.gamma2},
                    {"delta", *t2.delta},
                    {"a", t2.a_value},
                    {"capacity", geo.capacity}};
  double a3 = t2.a_value * t2.a_value * t2.a_value;
  for (const auto& s : samples) {
    if (s.distance > *t2.delta + 1e-15) continue;
    double bound = geo.capacity - *t2.gamma2 * s.distance * s.distance +
                   0.5 * a3 * std::pow(s.distance, 3.0);
    record_margin(cert, bound - info(s.point), slack);
  }
  return cert;
}

Certificate certify_theorem2(const Pipeline& pipe, const Theorem2Constants& t2,
                             const std::vector<NeighborhoodSample>& samples,
                             double slack) {
  ClassicalChannelModel model(pipe.sol.channel);
  return certify_theorem2([&](const Vec& p) { return model.info(p); }, pipe.sol,
                          t2, samples, slack);
}

DecayCurve converse_curve(const InfoFn& info, const CapacitySolution& geo,
                          double sigma_trace, const Theorem2Constants& t2,
                          bool quadratic, const std::vector<double>& taus,
                          double slack) {
  const Vec& dir = quadratic ? t2.gamma2_arg : t2.gamma1_arg;
  const Vec& base = quadratic ? t2.gamma2_base : t2.gamma1_base;
  if (dir.size() == 0)
    throw std::invalid_argument("converse_curve: requested branch has no minimizer");
  double tmax = kInf;
  for (Index i = 0; i < geo.lam.A().rows(); ++i) {
    double ad = geo.lam.A().row(i).dot(dir);
    if (ad > 1e-12)
      tmax = std::min(tmax, (geo.lam.b()[i] - geo.lam.A().row(i).dot(base)) / ad);
  }
  if (!(tmax > 0.0) || !std::isfinite(tmax))
    throw numerical_error(
        "converse_curve: minimizer direction is not realizable inside lam");

  DecayCurve curve;
  Vec vp = tmax * dir;
  curve.step_length = vp.norm();
  double a3 = t2.a_value * t2.a_value * t2.a_value;
  for (double tau : taus) {
    Vec p = base + tau * vp;
    double value = info(p);
    double d = tau * curve.step_length;
    double lower, upper;
    if (quadratic) {
      if (!t2.gamma2) throw std::invalid_argument("converse_curve: no gamma2");
      lower = geo.capacity - *t2.gamma2 * d * d - 0.5 * a3 * d * d * d;
      upper = (t2.delta && d <= *t2.delta)
                  ? geo.capacity - *t2.gamma2 * d * d + 0.5 * a3 * d * d * d
                  : kInf;
    } else {
      lower = geo.capacity - t2.gamma1 * d - sigma_trace * d * d;
      upper = geo.capacity - t2.gamma1 * d;
    }
    curve.tau.push_back(tau);
    curve.distance.push_back(d);
    curve.info.push_back(value);
    curve.lower.push_back(lower);
    curve.upper.push_back(upper);
    if (value < lower - slack) ++curve.violations;
    if (std::isfinite(upper) && value > upper + slack) ++curve.violations;
  }
  return curve;
}

DecayCurve converse_curve(const Pipeline& pipe, const Theorem2Constants& t2,
                          bool quadratic, const std::vector<double>& taus,
                          double slack) {
  ClassicalChannelModel model(pipe.sol.channel);
  return converse_curve([&](const Vec& p) { return model.info(p); }, pipe.sol,
                        pipe.sigma.trace(), t2, quadratic, taus, slack);
}

Example1Report example1_fourth_power() {
  Example1Report rep;
  rep.capacity = std::log(2.0);

  auto ratio = [&](double tau) {
    double gap = rep.capacity - corpus::example1_info(tau);
    double d = corpus::example1_distance(tau);
    return gap / std::pow(d, 4.0);
  };
  // Richardson extrapolation in tau^2 over the halving grid 0.2, 0.1, 0.05.
  double r1 = ratio(0.2), r2 = ratio(0.1), r3 = ratio(0.05);
  double r12 = r2 + (r2 - r1) / 3.0;
  double r23 = r3 + (r3 - r2) / 3.0;
  rep.ratio_limit = r23 + (r23 - r12) / 15.0;

  // Log-log slope of the gap against the distance.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (double tau = 0.05; tau <= 0.4 + 1e-12; tau += 0.05) {
    double x = std::log(corpus::example1_distance(tau));
    double y = std::log(rep.capacity - corpus::example1_info(tau));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  rep.fitted_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

  // Boundary points refute any fixed quadratic coefficient: the best local
  // coefficient decays to zero along tau -> 0.
  for (double tau : {0.8, 0.4, 0.2, 0.1, 0.05, 0.025}) {
    double d = corpus::example1_distance(tau);
    rep.taus.push_back(tau);
    rep.ratios.push_back(ratio(tau));
    rep.quad_coeffs.push_back((rep.capacity - corpus::example1_info(tau)) / (d * d));
  }

  // Polyhedral surrogates: gamma stays positive for every side count but
  // decays as the polygon approaches the ball.
  for (int k : {8, 16, 32, 64}) {
    auto inst = corpus::example1(k);
    auto pipe = build_pipeline(inst.channel, inst.lam);
    auto t1 = theorem1_constants(pipe.sol, pipe.dlp);
    rep.polygon_sides.push_back(k);
    rep.polygon_gamma.push_back(t1.gamma);
  }

  // Closed-form distance against the projection onto the singleton caid.
  auto inst = corpus::example1(24);
  auto sol = solve_capacity(inst.channel, inst.lam);
  for (double tau : rep.taus) {
    Vec p = corpus::example1_ptau(tau);
    double via_proj = (p - sol.caid.vertices()[0]).norm();
    rep.max_distance_residual =
        std::max(rep.max_distance_residual,
                 std::abs(via_proj - corpus::example1_distance(tau)));
  }
  return rep;
}

Example2Report example2_truncation(int max_index) {
  if (max_index < 2)
    throw std::invalid_argument("example2_truncation: max_index must be >= 2");
  Example2Report rep;
  rep.max_index = max_index;
  auto inst = corpus::example2(max_index);
  auto sol = solve_capacity(inst.channel, inst.lam);
  rep.capacity = sol.capacity;

  const Index n = inst.channel.inputs();
  Vec p1 = Vec::Zero(n);
  p1[0] = p1[1] = 0.5;
  rep.caid_is_p1 = sol.caid.vertices().size() == 1 &&
                   (sol.caid.vertices()[0] - p1).norm() < 1e-7;

  ClassicalChannelModel model(inst.channel);
  double prev = -kInf;
  rep.info_increasing = true;
  for (int k = 2; k <= max_index; ++k) {
    Vec pk = Vec::Zero(n);
    pk[2 * k - 1] = pk[2 * k] = 0.5;
    QpResult pr = sol.caid.project(pk);
    rep.distances.push_back((pk - pr.x).norm());
    double info = model.info(pk);
    rep.info_gaps.push_back(sol.capacity - info);
    if (info < prev - 1e-12) rep.info_increasing = false;
    prev = info;
  }

  // Segment bound: along (1-tau) p1 + tau p_K the distance is tau while the
  // gap is at most tau (C - I(p_K)), which vanishes as K grows.
  Vec pk = Vec::Zero(n);
  pk[2 * max_index - 1] = pk[2 * max_index] = 0.5;
  for (double tau = 0.1; tau <= 1.0 + 1e-12; tau += 0.1) {
    Vec mix = (1.0 - tau) * p1 + tau * pk;
    rep.taus.push_back(tau);
    rep.segment_bounds.push_back(sol.capacity - model.info(mix));
  }
  return rep;
}

Example3Report example3_zeta(int n, const std::vector<int>& truncations) {
  Example3Report rep;
  rep.n = n;
  rep.threshold = corpus::zeta_threshold();
  if (static_cast<double>(n) < rep.threshold)
    throw std::invalid_argument("example3_zeta: n below the tail threshold");
  rep.truncations = truncations;
  rep.capacity_expected = 0.5 * std::log(static_cast<double>(n - 1));

  for (int T : truncations) {
    auto inst = corpus::zeta(n, T);
    // Center induced by the uniform optimizer over the point-mass inputs.
    Vec unif = Vec::Zero(n);
    unif.tail(n - 1).setConstant(1.0 / static_cast<double>(n - 1));
    Vec q = inst.channel.matrix().transpose() * unif;
    FisherMatrix f = fisher_matrix(inst.channel, q);
    rep.sigma00.push_back(f.m(0, 0));
    rep.sigma01.push_back(f.m(0, 1));
    rep.a_values.push_back(a_coefficient(inst.channel, q).value);
  }
  // Diverging diagonal second moments prove the third-moment coefficient is
  // unbounded (A >= sqrt(tr Sigma)); the direct A estimates can hide the
  // growth behind the n-dependent constant at modest truncations.
  rep.a_lower_bound_only = rep.sigma00.size() >= 2;
  for (std::size_t i = 1; i < rep.sigma00.size(); ++i)
    if (rep.sigma00[i] <= rep.sigma00[i - 1] * 1.05)
      rep.a_lower_bound_only = false;

  const int t_max = *std::max_element(truncations.begin(), truncations.end());
  auto inst = corpus::zeta(n, t_max);
  auto sol = solve_capacity(inst.channel, inst.lam);
  rep.capacity = sol.capacity;
  Vec q0 = inst.channel.row(0);
  Vec q = inst.channel.matrix().transpose() * sol.maximizer;
  rep.tail_divergence = kl_divergence(q0, q);
  // Closed-form series: ln(2 zeta(3)/zeta(2)) + sum_j j^-2 ln j / zeta(2).
  double z2 = 0, z3 = 0, slog = 0;
  for (long j = 1; j < 3000000; ++j) {
    double jj = static_cast<double>(j);
    z2 += 1.0 / (jj * jj);
    z3 += 1.0 / (jj * jj * jj);
    slog += std::log(jj) / (jj * jj);
  }
  rep.tail_divergence_series = std::log(2.0 * z3 / z2) + slog / z2;
  return rep;
}

AppendixBReport appendix_b_counterexample() {
  AppendixBReport rep;
  rep.epsilon = corpus::appendix_b_epsilon();
  auto inst = corpus::appendix_b();
  auto sol = solve_capacity(inst.channel, inst.lam);
  rep.capacity = sol.capacity;

  Vec u(9);
  u << 0, 0, 0, 0, 0, 2, 2, -1, -3;
  rep.kernel_direction = u;
  rep.grad_dot_u = u.dot(sol.gradient);

  Vec pbar = sol.caid.vertices()[0];
  Vec uhat = u.normalized();
  rep.refuting_p = Vec::Zero(9);
  rep.refuting_p[5] = 1.0;  // point mass on the sixth letter
  Vec v = rep.refuting_p - pbar;
  rep.v0 = uhat * uhat.dot(v);
  rep.v0_norm = rep.v0.norm();
  rep.v0_dot_grad = rep.v0.dot(sol.gradient);
  rep.refutes_linear_kernel_bound =
      rep.v0_norm > 1e-6 && std::abs(rep.v0_dot_grad) < 1e-9;
  return rep;
}

Certificate divergence_sandwich_suite(long trials, std::uint64_t seed) {
  Certificate cert;
  cert.theorem = "divergence-sandwich";
  Rng rng(seed);
  const double slack = 1e-12;
  for (long t = 0; t < trials; ++t) {
    Index m = 2 + static_cast<Index>(rng.below(31));
    Vec w = rng.simplex_point(m);
    Vec q = rng.simplex_point(m);
    if (t % 7 == 3) {  // near-singular stress: pin an atom near zero
      Index y = static_cast<Index>(rng.below(m));
      double moved = q[y] - 1e-8;
      q[y] = 1e-8;
      q[(y + 1) % m] += moved;
    }
    double kl = kl_divergence(w, q);
    double tv = total_variation(w - q);
    double c2 = chi_alpha(w, q, 2.0);
    double c3 = chi_alpha(w, q, 3.0);
    double worst = kl - 0.5 * tv * tv;
    worst = std::min(worst, c2 - std::log1p(c2));
    worst = std::min(worst, std::log1p(c2) - kl);
    worst = std::min(worst, 0.5 * c3 - std::abs(kl - 0.5 * c2));
    record_margin(cert, worst, slack);
  }
  return cert;
}

}  // namespace caidgeo
